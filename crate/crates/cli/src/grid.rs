/// `steps` evenly spaced fields from `lo` to `hi`, with `extra` merged in.
pub fn field_grid(lo: f64, hi: f64, steps: usize, extra: Option<f64>) -> Vec<f64> {
    let mut g: Vec<f64> = match steps {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    };
    if let Some(x) = extra {
        if x >= lo && x <= hi && !g.iter().any(|y| (y - x).abs() < 1e-12) {
            g.push(x);
        }
    }
    g.sort_by(f64::total_cmp);
    g
}
