//! Reference tables the symbolic engine is checked against, kept as plain
//! expression strings so they can be read and compared independently of the
//! code that computes them.

use crate::error::Result;
use crate::exact::{parse_poly, Poly, Q};

/// `x_k` for `k = 2..=12` on `y² = x³ + bx − c`.
pub const XK: [(i32, &str); 11] = [
    (2, "x"),
    (3, "y"),
    (4, "x^2"),
    (5, "x*y"),
    (6, "x^3"),
    (7, "x^2*y - 1/2*b*y"),
    (8, "x^4"),
    (9, "x^3*y - 1/2*b*x*y + 1/2*c*y"),
    (10, "x^5"),
    (11, "x^4*y - 1/2*b*x^2*y + 1/2*c*x*y + 3/8*b^2*y"),
    (12, "x^6"),
];

/// Nonzero coefficients of `ξ³·y` in `ξ = x^{−1/2}`, through `ξ¹²`.
pub const Y_SERIES: [(i64, &str); 6] = [
    (0, "1"),
    (4, "1/2*b"),
    (6, "-1/2*c"),
    (8, "-1/8*b^2"),
    (10, "1/4*b*c"),
    (12, "-(2*c^2 - b^3)/16"),
];

/// Nonzero coefficients of `ξ⁻³·y⁻¹`, through `ξ¹²`.
pub const Y_INVERSE_SERIES: [(i64, &str); 6] = [
    (0, "1"),
    (4, "-1/2*b"),
    (6, "1/2*c"),
    (8, "3/8*b^2"),
    (10, "-3/4*b*c"),
    (12, "(6*c^2 - 5*b^3)/16"),
];

/// `p_0 … p_7`.
pub const PN: [(usize, &str); 8] = [
    (0, "1"),
    (1, "t"),
    (2, "t^2 - x"),
    (3, "t^3 - 3*x*t + 2*y"),
    (4, "t^4 - 6*x*t^2 + 8*y*t - 3*x^2"),
    (5, "t^5 - 10*x*t^3 + 20*y*t^2 - 15*x^2*t + 4*x*y"),
    (6, "t^6 - 15*x*t^4 + 40*y*t^3 - 45*x^2*t^2 + 24*x*y*t - 5*x^3"),
    (7, "t^7 - 21*x*t^5 + 70*y*t^4 - 105*x^2*t^3 + 84*x*y*t^2 - 35*x^3*t + 6*(x^2*y - 1/2*b*y)"),
];

/// Monodromies around `∞` and `+1` on the column `(a_D, a)`.
pub const M_INFINITY: [[i64; 2]; 2] = [[-1, 2], [0, -1]];
pub const M_PLUS_ONE: [[i64; 2]; 2] = [[1, 0], [-2, 1]];

pub fn parsed<K: Copy>(table: &[(K, &str)]) -> Result<Vec<(K, Poly<Q>)>> {
    table.iter().map(|&(k, s)| Ok((k, parse_poly(s)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse() {
        assert_eq!(parsed(&XK).unwrap().len(), 11);
        assert_eq!(parsed(&PN).unwrap()[7].1.degree_in("t"), Some(7));
        assert!(parsed(&Y_SERIES).is_ok() && parsed(&Y_INVERSE_SERIES).is_ok());
    }
}
