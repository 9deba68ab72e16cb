//! Scalability bench: times parsing, transformation and rendering over
//! synthetically duplicated documents.

use std::time::Instant;

use normforge::lrml::{parse_document, to_xml, LrmlDocument};
use normforge::render::render_lrml;
use normforge::transform::{transform, TransformOptions};

use crate::mem;
use crate::synthetic::duplicate_document;

pub const CSV_HEADER: &str = "k,statements,rules,parse_ms,transform_ms,render_ms,peak_mem_mb";

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub k: usize,
    pub statements: usize,
    pub rules: usize,
    pub parse_ms: f64,
    pub transform_ms: f64,
    pub render_ms: f64,
    pub peak_mem_mb: f64,
}

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{:.3},{:.3},{:.3},{:.3}",
            self.k,
            self.statements,
            self.rules,
            self.parse_ms,
            self.transform_ms,
            self.render_ms,
            self.peak_mem_mb
        )
    }
}

/// Runs the bench for k = 1..=duplications, timing each stage as the mean of
/// `runs` executions after one warm-up. Iterations run sequentially to keep
/// the timings honest.
pub fn run_bench(
    base: &LrmlDocument,
    duplications: usize,
    runs: usize,
) -> Result<Vec<BenchRow>, String> {
    let runs = runs.max(1);
    let mut rows = Vec::with_capacity(duplications);
    for k in 1..=duplications {
        let doc = duplicate_document(base, k);
        let xml = to_xml(&doc);
        let statements = doc.statements.len();

        // Warm-up, also yields the rule count.
        let parsed = parse_document(&xml).map_err(|e| e.to_string())?;
        let warm = transform(&parsed, &TransformOptions::default()).map_err(|e| e.to_string())?;
        let _ = render_lrml(&warm.theory);
        let rules = warm.theory.rules().len();

        mem::reset_peak();
        let baseline = mem::current_bytes();
        let mut parse_total = 0.0;
        let mut transform_total = 0.0;
        let mut render_total = 0.0;
        for _ in 0..runs {
            let t0 = Instant::now();
            let doc = parse_document(&xml).map_err(|e| e.to_string())?;
            parse_total += t0.elapsed().as_secs_f64() * 1e3;

            let t1 = Instant::now();
            let out = transform(&doc, &TransformOptions::default()).map_err(|e| e.to_string())?;
            transform_total += t1.elapsed().as_secs_f64() * 1e3;

            let t2 = Instant::now();
            let rendered = render_lrml(&out.theory);
            render_total += t2.elapsed().as_secs_f64() * 1e3;
            std::hint::black_box(rendered);
        }
        let peak = mem::peak_bytes().saturating_sub(baseline);

        rows.push(BenchRow {
            k,
            statements,
            rules,
            parse_ms: parse_total / runs as f64,
            transform_ms: transform_total / runs as f64,
            render_ms: render_total / runs as f64,
            peak_mem_mb: peak as f64 / (1024.0 * 1024.0),
        });
    }
    Ok(rows)
}

/// Least-squares fit `y = a + b x`, returning the coefficient of
/// determination.
pub fn r_squared(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return 0.0;
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let fit = intercept + slope * x;
            (y - fit).powi(2)
        })
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic::base_document;

    #[test]
    fn bench_rows_report_the_expected_counts() {
        let rows = run_bench(&base_document(), 2, 1).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].rules, 84);
        assert_eq!(rows[1].rules, 168);
        assert_eq!(rows[0].statements, 94);
        assert!(rows.iter().all(|r| r.parse_ms > 0.0));
    }

    #[test]
    fn r_squared_is_one_on_exact_lines() {
        let xs: Vec<f64> = (1..=10).map(|x| x as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 + 2.0 * x).collect();
        assert!((r_squared(&xs, &ys) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn r_squared_is_low_on_uncorrelated_data() {
        let xs: Vec<f64> = (1..=8).map(|x| x as f64).collect();
        let ys = vec![5.0, 1.0, 4.0, 2.0, 5.0, 1.0, 4.0, 2.0];
        assert!(r_squared(&xs, &ys) < 0.5);
    }
}
