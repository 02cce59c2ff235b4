//! Directed-rounding helpers for upward-safe bound arithmetic.
//!
//! IEEE round-to-nearest places the true result within half an ulp of the
//! computed one, so stepping one ulp outward after every operation yields a
//! value that is certainly on the safe side. These helpers are used on the
//! cold paths only (Lipschitz constants, cube variation bounds, the error
//! ledger, ratio quotients); the hot accumulation loop runs in plain
//! round-to-nearest and has its rounding charged by the ledger instead.

/// Upper bound on the unit roundoff of `f64` as used by the error ledger.
/// The true machine epsilon is `2^-52 ≈ 2.2204e-16`.
pub const EPS_M: f64 = 2.23e-16;

/// `a + b` rounded so the result is ≥ the exact sum.
#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    (a + b).next_up()
}

/// `a - b` rounded so the result is ≤ the exact difference.
#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    (a - b).next_down()
}

/// `a * b` rounded so the result is ≥ the exact product.
#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    (a * b).next_up()
}

/// `a / b` rounded so the result is ≥ the exact quotient.
#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    (a / b).next_up()
}

/// `sqrt(a)` rounded so the result is ≥ the exact root.
#[inline]
pub fn sqrt_up(a: f64) -> f64 {
    a.sqrt().next_up()
}

/// `base^p` for `base ≥ 0`, rounded so the result is ≥ the exact power.
///
/// Integer exponents up to 8 use an upward-rounded multiplication chain;
/// other exponents fall back to the platform power function padded by four
/// ulps (a generous cover for its worst-case error on finite inputs).
pub fn pow_up(base: f64, p: f64) -> f64 {
    debug_assert!(base >= 0.0 && p >= 0.0);
    if p == 0.0 {
        return 1.0;
    }
    if p.fract() == 0.0 && p <= 8.0 {
        let mut r = 1.0f64;
        for _ in 0..p as u32 {
            r = mul_up(r, base);
        }
        r
    } else {
        let mut r = base.powf(p);
        for _ in 0..4 {
            r = r.next_up();
        }
        r
    }
}
