//! Block-wise linear change of variables that diagonalizes every
//! Williamson field on monomials.
//!
//! Per block:
//!   elliptic     z = x + iy,          zbar = x - iy,
//!   hyperbolic   unchanged,
//!   focus-focus  u = x_i + i x_{i+1}, ubar = x_i - i x_{i+1},
//!                v = y_i + i y_{i+1}, vbar = y_i - i y_{i+1}.
//! Chart variables occupy the slots of the real pair they replace, so
//! `Monomial` exponents keep their positions and `eigenvalue` reads them
//! directly.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{check_same_system, CoordinateSystem, Polynomial};
use crate::scalar::Scalar;
use crate::williamson::{BlockKind, WilliamsonBasis};

/// The forward (real -> chart) and inverse substitutions for a basis.
#[derive(Debug, Clone)]
pub struct ComplexChart {
    real: Arc<CoordinateSystem>,
    chart: Arc<CoordinateSystem>,
    to_chart: Vec<Polynomial>,
    to_real: Vec<Polynomial>,
}

impl ComplexChart {
    pub fn new(basis: &WilliamsonBasis) -> Self {
        let real = basis.coords().clone();
        let n = real.pair_count();
        let mut names = vec![String::new(); 2 * n];
        for block in basis.blocks() {
            match *block {
                BlockKind::Elliptic { pair } => {
                    names[CoordinateSystem::x_slot(pair)] = format!("z{pair}");
                    names[CoordinateSystem::y_slot(pair)] = format!("zb{pair}");
                }
                BlockKind::Hyperbolic { pair } => {
                    names[CoordinateSystem::x_slot(pair)] = format!("x{pair}");
                    names[CoordinateSystem::y_slot(pair)] = format!("y{pair}");
                }
                BlockKind::FocusFocus { first } => {
                    names[CoordinateSystem::x_slot(first)] = format!("u{first}");
                    names[CoordinateSystem::y_slot(first)] = format!("ub{first}");
                    names[CoordinateSystem::x_slot(first + 1)] = format!("v{first}");
                    names[CoordinateSystem::y_slot(first + 1)] = format!("vb{first}");
                }
            }
        }
        let chart = CoordinateSystem::from_names(names);

        let var = |c: &Arc<CoordinateSystem>, s: usize| Polynomial::variable(c, s);
        let half = Scalar::ratio(1, 2);
        let half_i = Scalar::ratio_i(1, 2);
        let i_unit = Scalar::i();

        let mut to_chart = vec![Polynomial::zero(&chart); 2 * n];
        let mut to_real = vec![Polynomial::zero(&real); 2 * n];
        for block in basis.blocks() {
            match *block {
                BlockKind::Hyperbolic { pair } => {
                    let (xs, ys) = (CoordinateSystem::x_slot(pair), CoordinateSystem::y_slot(pair));
                    to_chart[xs] = var(&chart, xs);
                    to_chart[ys] = var(&chart, ys);
                    to_real[xs] = var(&real, xs);
                    to_real[ys] = var(&real, ys);
                }
                BlockKind::Elliptic { pair } => {
                    let (xs, ys) = (CoordinateSystem::x_slot(pair), CoordinateSystem::y_slot(pair));
                    // x = (z + zb)/2, y = (i/2)(zb - z)
                    to_chart[xs] = (&var(&chart, xs) + &var(&chart, ys)).scale(&half);
                    to_chart[ys] = (&var(&chart, ys) - &var(&chart, xs)).scale(&half_i);
                    // z = x + iy, zb = x - iy
                    to_real[xs] = &var(&real, xs) + &var(&real, ys).scale(&i_unit);
                    to_real[ys] = &var(&real, xs) - &var(&real, ys).scale(&i_unit);
                }
                BlockKind::FocusFocus { first } => {
                    let (xa, ya) = (CoordinateSystem::x_slot(first), CoordinateSystem::y_slot(first));
                    let (xb, yb) =
                        (CoordinateSystem::x_slot(first + 1), CoordinateSystem::y_slot(first + 1));
                    // slots: xa=u, ya=ub, xb=v, yb=vb
                    // x_i = (u + ub)/2, x_{i+1} = (i/2)(ub - u)
                    to_chart[xa] = (&var(&chart, xa) + &var(&chart, ya)).scale(&half);
                    to_chart[xb] = (&var(&chart, ya) - &var(&chart, xa)).scale(&half_i);
                    // y_i = (v + vb)/2, y_{i+1} = (i/2)(vb - v)
                    to_chart[ya] = (&var(&chart, xb) + &var(&chart, yb)).scale(&half);
                    to_chart[yb] = (&var(&chart, yb) - &var(&chart, xb)).scale(&half_i);
                    // u = x_i + i x_{i+1}, ub = x_i - i x_{i+1}
                    to_real[xa] = &var(&real, xa) + &var(&real, xb).scale(&i_unit);
                    to_real[ya] = &var(&real, xa) - &var(&real, xb).scale(&i_unit);
                    // v = y_i + i y_{i+1}, vb = y_i - i y_{i+1}
                    to_real[xb] = &var(&real, ya) + &var(&real, yb).scale(&i_unit);
                    to_real[yb] = &var(&real, ya) - &var(&real, yb).scale(&i_unit);
                }
            }
        }
        ComplexChart { real, chart, to_chart, to_real }
    }

    pub fn chart_coords(&self) -> &Arc<CoordinateSystem> {
        &self.chart
    }

    pub fn real_coords(&self) -> &Arc<CoordinateSystem> {
        &self.real
    }

    /// Rewrites a polynomial in chart variables without any realness
    /// requirement on the input.
    pub fn complexify_any(&self, p: &Polynomial) -> Result<Polynomial> {
        check_same_system(p.coords(), &self.real)?;
        p.substitute(&self.chart, &self.to_chart)
    }

    /// Rewrites back to real variables; coefficients may stay Gaussian.
    pub fn realify_any(&self, p: &Polynomial) -> Result<Polynomial> {
        check_same_system(p.coords(), &self.chart)?;
        p.substitute(&self.real, &self.to_real)
    }
}

/// Ring homomorphism into the complex chart. The input must lie in the
/// real subfield; `realify` inverts it exactly.
pub fn complexify(p: &Polynomial, basis: &WilliamsonBasis) -> Result<Polynomial> {
    if !p.is_real() {
        return Err(Error::NotReal);
    }
    ComplexChart::new(basis).complexify_any(p)
}

/// Inverse of `complexify`; rejects inputs that are not
/// conjugation-symmetric (i.e. whose realification is not real).
pub fn realify(p: &Polynomial, basis: &WilliamsonBasis) -> Result<Polynomial> {
    let out = ComplexChart::new(basis).realify_any(p)?;
    if !out.is_real() {
        return Err(Error::NotConjugationSymmetric);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;
    use crate::williamson::BlockLabel;

    #[test]
    fn elliptic_x_maps_to_half_z_plus_zbar() {
        let basis = WilliamsonBasis::new(&[BlockLabel::Elliptic]);
        let chart = ComplexChart::new(&basis);
        let x = parse_polynomial("x1", basis.coords()).unwrap();
        let expect = parse_polynomial("1/2*z1 + 1/2*zb1", chart.chart_coords()).unwrap();
        assert_eq!(complexify(&x, &basis).unwrap(), expect);
    }

    #[test]
    fn elliptic_h_maps_to_z_zbar() {
        let basis = WilliamsonBasis::new(&[BlockLabel::Elliptic]);
        let chart = ComplexChart::new(&basis);
        let h = parse_polynomial("x1^2+y1^2", basis.coords()).unwrap();
        let expect = parse_polynomial("z1*zb1", chart.chart_coords()).unwrap();
        assert_eq!(complexify(&h, &basis).unwrap(), expect);
    }

    #[test]
    fn focus_focus_u_vbar_realifies_to_h1_minus_i_h2() {
        let basis = WilliamsonBasis::new(&[BlockLabel::FocusFocus]);
        let chart = ComplexChart::new(&basis);
        let uvb = parse_polynomial("u1*vb1", chart.chart_coords()).unwrap();
        let realified = chart.realify_any(&uvb).unwrap();
        let h1 = basis.hamiltonian(1).unwrap();
        let h2 = basis.hamiltonian(2).unwrap();
        let expect = &h1 + &h2.scale(&Scalar::ratio_i(-1, 1));
        assert_eq!(realified, expect);
    }

    #[test]
    fn realify_rejects_asymmetric_input() {
        let basis = WilliamsonBasis::new(&[BlockLabel::Elliptic]);
        let chart = ComplexChart::new(&basis);
        let z = parse_polynomial("z1", chart.chart_coords()).unwrap();
        assert!(matches!(realify(&z, &basis), Err(Error::NotConjugationSymmetric)));
    }

    #[test]
    fn complexify_requires_real_subfield() {
        let basis = WilliamsonBasis::new(&[BlockLabel::Elliptic]);
        let p = parse_polynomial("(0+1*I)*x1", basis.coords()).unwrap();
        assert!(matches!(complexify(&p, &basis), Err(Error::NotReal)));
    }

    #[test]
    fn round_trip_on_handpicked_polynomials() {
        for labels in [
            vec![BlockLabel::Elliptic],
            vec![BlockLabel::Hyperbolic],
            vec![BlockLabel::FocusFocus],
            vec![BlockLabel::Elliptic, BlockLabel::FocusFocus],
        ] {
            let basis = WilliamsonBasis::new(&labels);
            let text = match basis.n() {
                1 => "x1^3*y1 - 2*x1 + 7",
                _ => "x1^3*y1 - 2*x2 + x1*y2^2 + 7",
            };
            let p = parse_polynomial(text, basis.coords()).unwrap();
            let back = realify(&complexify(&p, &basis).unwrap(), &basis).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn chart_diagonalizes_the_fields() {
        // realify(eigenvalue * monomial) == X_i(realify(monomial))
        for labels in [
            vec![BlockLabel::Elliptic],
            vec![BlockLabel::Hyperbolic],
            vec![BlockLabel::FocusFocus],
        ] {
            let basis = WilliamsonBasis::new(&labels);
            let chart = ComplexChart::new(&basis);
            let nv = basis.coords().len();
            // a modest spread of chart monomials
            let mut exps = vec![vec![0u16; nv]];
            for s in 0..nv {
                let mut e = vec![0u16; nv];
                e[s] = 2;
                exps.push(e);
                let mut f = vec![1u16; nv];
                f[s] = 3;
                exps.push(f);
            }
            for e in exps {
                let m = crate::polyring::Monomial::from_exponents(e);
                let mono =
                    Polynomial::from_terms(chart.chart_coords(), [(m.clone(), Scalar::one())]);
                let real = chart.realify_any(&mono).unwrap();
                for i in 1..=basis.n() {
                    let lambda = basis.eigenvalue(i, &m).unwrap();
                    let lhs = basis.apply_field(i, &real).unwrap();
                    assert_eq!(lhs, real.scale(&lambda), "field {i} on {m:?}");
                }
            }
        }
    }
}
