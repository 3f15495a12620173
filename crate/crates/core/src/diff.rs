//! Numerical derivatives of opaque callables.

/// Default first-derivative step: ε^{1/3}·max(1, |x|).
pub(crate) fn default_step(x: f64) -> f64 {
    f64::EPSILON.cbrt() * x.abs().max(1.0)
}

fn stencil4(f: &impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

/// f′(x) from the fourth-order central stencil at steps h and h/2, combined
/// by one Richardson level. Samples reach x ± 2h.
pub(crate) fn first_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d1 = stencil4(&f, x, h);
    let d2 = stencil4(&f, x, 0.5 * h);
    (16.0 * d2 - d1) / 15.0
}

/// m-th central difference quotient; samples span x ± m·h/2.
fn central_m(g: &impl Fn(f64) -> f64, x: f64, m: u32, h: f64) -> f64 {
    let mut sum = 0.0;
    let mut binom = 1.0;
    for j in 0..=m {
        let offset = (0.5 * m as f64 - j as f64) * h;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom * g(x + offset);
        binom *= (m - j) as f64 / (j + 1) as f64;
    }
    sum / h.powi(m as i32)
}

/// m-th derivative by Richardson extrapolation (Ridders' tableau) of
/// central differences with step h0/2ⁱ. Returns the value and an error
/// estimate. The stencil never leaves x ± m·h0/2.
pub(crate) fn ridders(g: impl Fn(f64) -> f64, x: f64, m: u32, h0: f64) -> (f64, f64) {
    const ROWS: usize = 10;
    if m == 0 {
        return (g(x), 0.0);
    }
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(ROWS);
    let mut best = (f64::NAN, f64::INFINITY);
    let mut h = h0;
    for i in 0..ROWS {
        let mut row = vec![central_m(&g, x, m, h)];
        for k in 1..=i {
            let f = 4f64.powi(k as i32);
            let prev = &table[i - 1];
            let v = (f * row[k - 1] - prev[k - 1]) / (f - 1.0);
            let err = (v - row[k - 1]).abs().max((v - prev[k - 1]).abs());
            if err <= best.1 {
                best = (v, err);
            }
            row.push(v);
        }
        if i > 0 {
            let diag = (row[i] - table[i - 1][i - 1]).abs();
            if diag >= 2.0 * best.1 && best.1.is_finite() {
                break;
            }
        }
        table.push(row);
        h *= 0.5;
    }
    if !best.0.is_finite() {
        let v = table.last().map_or(f64::NAN, |r| r[0]);
        return (v, f64::INFINITY);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_derivative_of_exp_and_sin() {
        let d = first_derivative(f64::exp, 1.0, default_step(1.0));
        assert!((d - 1f64.exp()).abs() < 1e-10);
        let d = first_derivative(f64::sin, 0.3, default_step(0.3));
        assert!((d - 0.3f64.cos()).abs() < 1e-10);
    }

    #[test]
    fn higher_derivatives() {
        let (v, e) = ridders(f64::exp, 0.5, 2, 0.4);
        assert!((v - 0.5f64.exp()).abs() < 1e-10, "{v} {e}");
        let (v, _) = ridders(|x| x.powi(5), 1.0, 3, 0.3);
        assert!((v - 60.0).abs() < 1e-8);
        let (v, _) = ridders(f64::ln, 2.0, 1, 0.5);
        assert!((v - 0.5).abs() < 1e-11);
    }
}
