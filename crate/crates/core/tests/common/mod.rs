#![allow(dead_code)]

use std::f64::consts::PI;

/// Standard normal density.
pub fn phi(t: f64) -> f64 {
    (-0.5 * t * t).exp() / (2.0 * PI).sqrt()
}

/// Composite Simpson rule with `2m` panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let n = 2 * m;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// `P(a < Z < b)` for a standard normal `Z`, by quadrature of the density.
pub fn normal_mass(a: f64, b: f64) -> f64 {
    let a = a.max(-40.0);
    let b = b.min(40.0);
    if b <= a {
        return 0.0;
    }
    let panels = (((b - a) * 400.0).ceil() as usize).max(200);
    simpson(phi, a, b, panels)
}

/// `P(Z > a)` by quadrature.
pub fn normal_upper(a: f64) -> f64 {
    if a >= 0.0 {
        normal_mass(a, 40.0)
    } else {
        0.5 + normal_mass(a, 0.0)
    }
}

/// Neumaier-compensated sum.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// Maximum of `f` over a regular `k x k` grid on `[x0, x1] x [y0, y1]`.
pub fn grid_max(f: impl Fn(f64, f64) -> f64, (x0, x1): (f64, f64), (y0, y1): (f64, f64), k: usize) -> (f64, f64, f64) {
    let mut best = (f64::NEG_INFINITY, x0, y0);
    for i in 0..k {
        let x = x0 + (x1 - x0) * i as f64 / (k - 1) as f64;
        for j in 0..k {
            let y = y0 + (y1 - y0) * j as f64 / (k - 1) as f64;
            let v = f(x, y);
            if v > best.0 {
                best = (v, x, y);
            }
        }
    }
    best
}
