//! Univariate power series and implicit function solving.

use super::jet::substitute;
use super::poly::TruncPoly;
use super::scalar::{self, Scalar};
use crate::error::{Error, Result};
use num_traits::Zero;

/// Multiplicative inverse of a univariate series with nonzero constant term.
pub fn series_recip(p: &TruncPoly) -> Result<TruncPoly> {
    assert_eq!(p.nvars(), 1);
    let order = p.order() as usize;
    let c: Vec<Scalar> = (0..=order).map(|k| p.coeff_of(&[k as u32])).collect();
    if c[0].is_zero() {
        return Err(Error::Degenerate("series has zero constant term".into()));
    }
    let inv0 = c[0].recip();
    let mut b = vec![Scalar::zero(); order + 1];
    b[0] = inv0.clone();
    for k in 1..=order {
        let mut s = Scalar::zero();
        for j in 1..=k {
            s += &c[j] * &b[k - j];
        }
        b[k] = -(s * &inv0);
    }
    Ok(TruncPoly::from_terms(
        1,
        p.order(),
        b.into_iter().enumerate().map(|(k, v)| (vec![k as u32], v)),
    ))
}

/// Solve `g(x, y) = 0` for the variable `solve_for` (0 or 1) as a series in
/// the other one, by Newton iteration in the truncated series ring.
///
/// Requires `g(0,0) = 0` and a nonzero partial derivative in `solve_for` at
/// the origin. The result `s` has `s(0) = 0` and `g ≡ 0` along the graph
/// modulo terms above the order.
pub fn implicit_series_solve(g: &TruncPoly, solve_for: usize) -> Result<TruncPoly> {
    if g.nvars() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "implicit solve needs 2 variables, got {}",
            g.nvars()
        )));
    }
    if solve_for > 1 {
        return Err(Error::VariableOutOfRange {
            index: solve_for,
            nvars: 2,
        });
    }
    if !g.constant_term().is_zero() {
        return Err(Error::Degenerate("g(0,0) != 0".into()));
    }
    let dg = g.partial_derivative(solve_for)?;
    if dg.constant_term().is_zero() {
        return Err(Error::Degenerate(
            "partial derivative in the solved variable vanishes at 0".into(),
        ));
    }
    let order = g.order();
    let t = TruncPoly::var(1, order, 0);
    let mut s = TruncPoly::zero(1, order);
    // Newton doubles the number of correct coefficients per step
    for _ in 0..=order + 1 {
        let inner = if solve_for == 1 {
            vec![t.clone(), s.clone()]
        } else {
            vec![s.clone(), t.clone()]
        };
        let val = substitute(std::slice::from_ref(g), &inner)?.remove(0);
        if val.is_zero() {
            return Ok(s);
        }
        let der = substitute(std::slice::from_ref(&dg), &inner)?.remove(0);
        let step = &val * &series_recip(&der)?;
        s = &s - &step;
    }
    Ok(s)
}

/// `p(x, s(x))` (or `p(s(y), y)`), the restriction of a two-variable
/// polynomial to the graph of a univariate series.
pub fn restrict_to_graph(p: &TruncPoly, graph: &TruncPoly, graph_var: usize) -> Result<TruncPoly> {
    let t = TruncPoly::var(1, graph.order(), 0);
    let inner = if graph_var == 1 {
        vec![t, graph.clone()]
    } else {
        vec![graph.clone(), t]
    };
    Ok(substitute(std::slice::from_ref(p), &inner)?.remove(0))
}

/// Univariate series `c_0 + c_1 t + ...` from integer coefficients.
pub fn uni(order: u32, coeffs: &[Scalar]) -> TruncPoly {
    TruncPoly::from_terms(
        1,
        order,
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (vec![k as u32], c.clone())),
    )
}

pub fn uni_ints(order: u32, coeffs: &[i64]) -> TruncPoly {
    let c: Vec<Scalar> = coeffs.iter().map(|&v| scalar::int(v)).collect();
    uni(order, &c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recip_of_one_minus_t() {
        let p = uni_ints(4, &[1, -1]);
        assert_eq!(series_recip(&p).unwrap(), uni_ints(4, &[1, 1, 1, 1, 1]));
    }

    #[test]
    fn cusp_singular_curve() {
        // 3y^2 + x = 0 solved for x: x = -3 y^2
        let g = TruncPoly::from_int_terms(2, 4, &[(&[0, 2], 3), (&[1, 0], 1)]);
        let s = implicit_series_solve(&g, 0).unwrap();
        assert_eq!(s, uni_ints(4, &[0, 0, -3]));
    }

    #[test]
    fn trivial_and_linear_solves() {
        let g = TruncPoly::from_int_terms(2, 4, &[(&[0, 1], 1)]);
        assert!(implicit_series_solve(&g, 1).unwrap().is_zero());
        let g = TruncPoly::from_int_terms(2, 4, &[(&[0, 1], 1), (&[1, 0], 1), (&[2, 0], 1)]);
        assert_eq!(
            implicit_series_solve(&g, 1).unwrap(),
            uni_ints(4, &[0, -1, -1])
        );
    }

    #[test]
    fn nondegeneracy_is_checked() {
        let g = TruncPoly::from_int_terms(2, 4, &[(&[0, 2], 1), (&[1, 0], 1)]);
        assert!(matches!(
            implicit_series_solve(&g, 1),
            Err(Error::Degenerate(_))
        ));
    }
}
