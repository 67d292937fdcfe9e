use num_bigint::BigInt;
use num_rational::BigRational;

use dancewalk::group::Element;

/// Rounds to 12 significant digits; the result serializes identically on
/// every run.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Always `a/b`, including integers.
pub fn rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn coords(x: &Element) -> Vec<i64> {
    x.torsion().iter().chain(x.free()).copied().collect()
}

pub fn big(v: &BigInt) -> String {
    v.to_string()
}
