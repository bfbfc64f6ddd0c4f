//! Special functions over complex arguments: Hermite polynomials, the
//! terminating Gauss hypergeometric series, rising factorials and
//! log-binomials.

mod dd;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use dd::CDd;

/// Physicists' Hermite polynomial `H_n(x)` from
/// `H_{k+1} = 2x H_k − 2k H_{k−1}`. Values are unscaled and grow quickly.
pub fn hermite(n: usize, x: C64) -> C64 {
    let mut prev = C64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_0(x), …, H_n(x)` from the same recurrence as [`hermite`].
pub fn hermite_sequence(n: usize, x: C64) -> Vec<C64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(C64::new(1.0, 0.0));
    if n >= 1 {
        out.push(2.0 * x);
    }
    for k in 1..n {
        let next = 2.0 * x * out[k] - 2.0 * k as f64 * out[k - 1];
        out.push(next);
    }
    out
}

/// Parameters of `₂F₁[−n, b; c; x]`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct HypergeometricSpec {
    pub n: usize,
    pub b: C64,
    pub c: C64,
    pub x: C64,
}

/// Evaluates `₂F₁[−n, b; c; x] = Σ_{k=0}^{n} (−n)_k (b)_k / ((c)_k k!) x^k`
/// as a literal finite sum, accumulating the term ratio
/// `((k − n)(b + k) x) / ((c + k)(k + 1))` in increasing `k`.
///
/// At `x = 2` the terms reach `~3ⁿ` while the sum is `O(1)`, so the
/// accumulation runs in double-double. That keeps roughly 13 significant
/// digits at `n = 40`, where plain f64 keeps none.
pub fn gauss_2f1_terminating(spec: &HypergeometricSpec) -> Result<C64> {
    let HypergeometricSpec { n, b, c, x } = *spec;
    for k in 0..n {
        if c + k as f64 == C64::new(0.0, 0.0) {
            return Err(Error::ZeroDenominator(k + 1));
        }
    }
    let bd = CDd::from_c64(b);
    let cd = CDd::from_c64(c);
    let xd = CDd::from_c64(x);
    let mut term = CDd::real(1.0);
    let mut sum = term;
    for k in 0..n {
        let kd = CDd::real(k as f64);
        let num = CDd::real(k as f64 - n as f64) * (bd + kd) * xd;
        let den = (cd + kd) * CDd::real(k as f64 + 1.0);
        term = term * (num / den);
        sum = sum + term;
    }
    Ok(sum.to_c64())
}

/// Rising factorial `q^{(n)} = q (q + 1) … (q + n − 1)`, with `q^{(0)} = 1`.
pub fn pochhammer(q: C64, n: usize) -> C64 {
    (0..n).fold(C64::new(1.0, 0.0), |acc, k| acc * (q + k as f64))
}

/// `ln(q^{(n)})` for real `q > 0`.
pub fn log_pochhammer_real(q: f64, n: usize) -> f64 {
    (0..n).map(|k| (q + k as f64).ln()).sum()
}

/// `ln(n!) = ln Γ(n + 1)` for integer `n`.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `ln(k!)` for `k = 0..=n`.
pub fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(acc);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// `ln C(n, q)` as a difference of log-gamma values.
pub fn log_binomial(n: usize, q: usize) -> Result<f64> {
    if q > n {
        return Err(Error::BinomialRange { n, q });
    }
    Ok(ln_factorial(n) - ln_factorial(q) - ln_factorial(n - q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn hermite_low_orders() {
        let x = C64::new(0.3, -1.2);
        assert_eq!(hermite(0, x), re(1.0));
        assert_eq!(hermite(1, x), 2.0 * x);
        assert_eq!(hermite(3, re(1.0)), re(-4.0));
        let h4 = 16.0 * x.powi(4) - 48.0 * x * x + 12.0;
        assert!((hermite(4, x) - h4).norm() < 1e-12);
    }

    #[test]
    fn hermite_sequence_matches_scalar() {
        let x = C64::new(-0.6, 0.8);
        for (n, h) in hermite_sequence(15, x).into_iter().enumerate() {
            assert_eq!(h, hermite(n, x));
        }
    }

    #[test]
    fn hypergeometric_small_cases() {
        let spec = |n, b: f64, c: f64| HypergeometricSpec {
            n,
            b: re(b),
            c: re(c),
            x: re(2.0),
        };
        assert_eq!(gauss_2f1_terminating(&spec(0, 3.3, 1.0)).unwrap(), re(1.0));
        assert_eq!(gauss_2f1_terminating(&spec(1, 2.0, 1.0)).unwrap(), re(-3.0));
        // 1 − 2 + 3/2, summed by hand from the Pochhammer definition.
        let v = gauss_2f1_terminating(&spec(2, 0.5, 1.0)).unwrap();
        assert!((v - re(0.5)).norm() < 1e-15);
    }

    #[test]
    fn hypergeometric_zero_denominator() {
        let bad = HypergeometricSpec {
            n: 3,
            b: re(0.5),
            c: re(-1.0),
            x: re(2.0),
        };
        assert_eq!(gauss_2f1_terminating(&bad), Err(Error::ZeroDenominator(2)));
        // c = -3 is only reached by the (c)_4 factor, which a degree-3 sum never uses.
        let ok = HypergeometricSpec {
            n: 3,
            b: re(0.5),
            c: re(-3.0),
            x: re(2.0),
        };
        assert!(gauss_2f1_terminating(&ok).is_ok());
    }

    #[test]
    fn pochhammer_examples() {
        let q = C64::new(0.7, 0.2);
        assert_eq!(pochhammer(q, 0), re(1.0));
        assert_eq!(pochhammer(re(1.0), 4), re(24.0));
        assert_eq!(pochhammer(re(1.5), 2), re(3.75));
        assert!((log_pochhammer_real(1.5, 2) - 3.75f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn log_binomial_examples() {
        assert_eq!(log_binomial(7, 0).unwrap(), 0.0);
        assert!((log_binomial(4, 2).unwrap() - 6f64.ln()).abs() < 1e-14);
        let exact = 137_846_528_820f64.ln();
        assert!((log_binomial(40, 20).unwrap() - exact).abs() / exact < 1e-9);
        assert_eq!(log_binomial(3, 4), Err(Error::BinomialRange { n: 3, q: 4 }));
    }

    #[test]
    fn ln_factorial_table_matches_scalar() {
        let t = ln_factorials(20);
        for n in 0..=20 {
            assert!((t[n] - ln_factorial(n)).abs() < 1e-12);
        }
    }
}
