//! Williamson normal-form blocks and their Hamiltonian vector fields as
//! exact linear operators on polynomials.
//!
//! The basis functions are
//!   elliptic     h_i = x_i^2 + y_i^2,
//!   hyperbolic   h_i = x_i y_i,
//!   focus-focus  h_i = x_i y_i + x_{i+1} y_{i+1},
//!                h_{i+1} = x_i y_{i+1} - x_{i+1} y_i,
//! with the fields taken with respect to the Darboux form sum dx_i ^ dy_i.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{check_same_system, CoordinateSystem, Monomial, Polynomial};
use crate::scalar::Scalar;

/// Input label for one block, expanded positionally to pair indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockLabel {
    #[serde(rename = "e")]
    Elliptic,
    #[serde(rename = "h")]
    Hyperbolic,
    #[serde(rename = "ff")]
    FocusFocus,
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockLabel::Elliptic => write!(f, "e"),
            BlockLabel::Hyperbolic => write!(f, "h"),
            BlockLabel::FocusFocus => write!(f, "ff"),
        }
    }
}

impl BlockLabel {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(BlockLabel::Elliptic),
            "h" => Ok(BlockLabel::Hyperbolic),
            "ff" => Ok(BlockLabel::FocusFocus),
            other => Err(Error::Invalid(format!("unknown block kind `{other}` (expected e|h|ff)"))),
        }
    }
}

/// A block with its assigned 1-based pair index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Elliptic { pair: usize },
    Hyperbolic { pair: usize },
    /// Occupies the two consecutive pairs (first, first + 1).
    FocusFocus { first: usize },
}

/// What the field with a given index does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldRole {
    Elliptic { pair: usize },
    Hyperbolic { pair: usize },
    /// X_i of a focus-focus pair starting at `first` (the radial field).
    FocusRadial { first: usize },
    /// X_{i+1} of a focus-focus pair starting at `first` (the rotation field).
    FocusRotation { first: usize },
}

/// Ordered list of singularity blocks with the derived counts
/// (k_e, k_h, k_f); n = k_e + k_h + 2 k_f symplectic pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WilliamsonBasis {
    blocks: Vec<BlockKind>,
    fields: Vec<FieldRole>,
    labels: Vec<BlockLabel>,
    coords: Arc<CoordinateSystem>,
    k_e: usize,
    k_h: usize,
    k_f: usize,
}

impl WilliamsonBasis {
    pub fn new(labels: &[BlockLabel]) -> Self {
        let mut blocks = Vec::new();
        let mut fields = Vec::new();
        let (mut k_e, mut k_h, mut k_f) = (0, 0, 0);
        let mut pair = 1;
        for &label in labels {
            match label {
                BlockLabel::Elliptic => {
                    blocks.push(BlockKind::Elliptic { pair });
                    fields.push(FieldRole::Elliptic { pair });
                    k_e += 1;
                    pair += 1;
                }
                BlockLabel::Hyperbolic => {
                    blocks.push(BlockKind::Hyperbolic { pair });
                    fields.push(FieldRole::Hyperbolic { pair });
                    k_h += 1;
                    pair += 1;
                }
                BlockLabel::FocusFocus => {
                    blocks.push(BlockKind::FocusFocus { first: pair });
                    fields.push(FieldRole::FocusRadial { first: pair });
                    fields.push(FieldRole::FocusRotation { first: pair });
                    k_f += 1;
                    pair += 2;
                }
            }
        }
        let n = pair - 1;
        debug_assert_eq!(n, k_e + k_h + 2 * k_f);
        WilliamsonBasis {
            blocks,
            fields,
            labels: labels.to_vec(),
            coords: CoordinateSystem::symplectic(n),
            k_e,
            k_h,
            k_f,
        }
    }

    pub fn from_labels(labels: &[&str]) -> Result<Self> {
        let parsed: Result<Vec<BlockLabel>> = labels.iter().map(|s| BlockLabel::parse(s)).collect();
        Ok(WilliamsonBasis::new(&parsed?))
    }

    /// Number of basis fields (= symplectic pairs).
    pub fn n(&self) -> usize {
        self.fields.len()
    }

    pub fn coords(&self) -> &Arc<CoordinateSystem> {
        &self.coords
    }

    pub fn blocks(&self) -> &[BlockKind] {
        &self.blocks
    }

    pub fn labels(&self) -> &[BlockLabel] {
        &self.labels
    }

    /// (k_e, k_h, k_f)
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.k_e, self.k_h, self.k_f)
    }

    pub fn has_focus_focus(&self) -> bool {
        self.k_f > 0
    }

    pub fn field_role(&self, i: usize) -> Result<FieldRole> {
        if i == 0 || i > self.fields.len() {
            return Err(Error::IndexOutOfRange { index: i, max: self.fields.len() });
        }
        Ok(self.fields[i - 1])
    }

    /// The coordinate slots of the block containing field `i`: two for
    /// elliptic/hyperbolic, four for a focus-focus pair.
    pub fn block_slots(&self, i: usize) -> Result<Vec<usize>> {
        Ok(match self.field_role(i)? {
            FieldRole::Elliptic { pair } | FieldRole::Hyperbolic { pair } => {
                vec![CoordinateSystem::x_slot(pair), CoordinateSystem::y_slot(pair)]
            }
            FieldRole::FocusRadial { first } | FieldRole::FocusRotation { first } => vec![
                CoordinateSystem::x_slot(first),
                CoordinateSystem::y_slot(first),
                CoordinateSystem::x_slot(first + 1),
                CoordinateSystem::y_slot(first + 1),
            ],
        })
    }

    /// Slots defining Σ_i, the vanishing set of X_i. For a focus-focus
    /// pair both fields vanish exactly on the common zero set of the four
    /// coordinates, so Σ_i = Σ_{i+1} is the whole block.
    pub fn sigma_slots(&self, i: usize) -> Result<Vec<usize>> {
        self.block_slots(i)
    }

    /// The exact quadratic h_i of the block containing field `i`.
    pub fn hamiltonian(&self, i: usize) -> Result<Polynomial> {
        let c = &self.coords;
        let var = |s| Polynomial::variable(c, s);
        let xs = CoordinateSystem::x_slot;
        let ys = CoordinateSystem::y_slot;
        Ok(match self.field_role(i)? {
            FieldRole::Elliptic { pair } => {
                let x = var(xs(pair));
                let y = var(ys(pair));
                &(&x * &x) + &(&y * &y)
            }
            FieldRole::Hyperbolic { pair } => &var(xs(pair)) * &var(ys(pair)),
            FieldRole::FocusRadial { first } => {
                let a = &var(xs(first)) * &var(ys(first));
                let b = &var(xs(first + 1)) * &var(ys(first + 1));
                &a + &b
            }
            FieldRole::FocusRotation { first } => {
                let a = &var(xs(first)) * &var(ys(first + 1));
                let b = &var(xs(first + 1)) * &var(ys(first));
                &a - &b
            }
        })
    }

    /// Applies X_i to a polynomial by the literal first-order operator in
    /// the real chart. Homogeneous degree is preserved.
    pub fn apply_field(&self, i: usize, p: &Polynomial) -> Result<Polynomial> {
        check_same_system(p.coords(), &self.coords)?;
        let c = &self.coords;
        let var = |s| Polynomial::variable(c, s);
        let xs = CoordinateSystem::x_slot;
        let ys = CoordinateSystem::y_slot;
        Ok(match self.field_role(i)? {
            // X = 2(-y d/dx + x d/dy)
            FieldRole::Elliptic { pair } => {
                let t = &(&var(xs(pair)) * &p.partial(ys(pair)))
                    - &(&var(ys(pair)) * &p.partial(xs(pair)));
                t.scale(&Scalar::from_int(2))
            }
            // X = -x d/dx + y d/dy
            FieldRole::Hyperbolic { pair } => {
                &(&var(ys(pair)) * &p.partial(ys(pair))) - &(&var(xs(pair)) * &p.partial(xs(pair)))
            }
            // X = -x_i d/dx_i + y_i d/dy_i - x_{i+1} d/dx_{i+1} + y_{i+1} d/dy_{i+1}
            FieldRole::FocusRadial { first } => {
                let (a, b) = (first, first + 1);
                let t1 = &(&var(ys(a)) * &p.partial(ys(a))) - &(&var(xs(a)) * &p.partial(xs(a)));
                let t2 = &(&var(ys(b)) * &p.partial(ys(b))) - &(&var(xs(b)) * &p.partial(xs(b)));
                &t1 + &t2
            }
            // X = x_{i+1} d/dx_i + y_{i+1} d/dy_i - x_i d/dx_{i+1} - y_i d/dy_{i+1}
            FieldRole::FocusRotation { first } => {
                let (a, b) = (first, first + 1);
                let t1 = &(&var(xs(b)) * &p.partial(xs(a))) + &(&var(ys(b)) * &p.partial(ys(a)));
                let t2 = &(&var(xs(a)) * &p.partial(xs(b))) + &(&var(ys(a)) * &p.partial(ys(b)));
                &t1 - &t2
            }
        })
    }

    /// Eigenvalue of X_i on a monomial of the complex chart, where every
    /// basis field acts diagonally. With (a, b) the exponents on the
    /// block's first pair of chart variables and (c, d) on the second:
    ///   hyperbolic       b - a          on x^a y^b,
    ///   elliptic         2i(a - b)      on z^a zbar^b,
    ///   focus radial     -a - b + c + d on u^a ubar^b v^c vbar^d,
    ///   focus rotation   i(-a + b - c + d).
    pub fn eigenvalue(&self, i: usize, m: &Monomial) -> Result<Scalar> {
        if m.nvars() != self.coords.len() {
            return Err(Error::Invalid("monomial has wrong number of variables".into()));
        }
        let xs = CoordinateSystem::x_slot;
        let ys = CoordinateSystem::y_slot;
        Ok(match self.field_role(i)? {
            FieldRole::Hyperbolic { pair } => {
                let a = m.exponent(xs(pair)) as i64;
                let b = m.exponent(ys(pair)) as i64;
                Scalar::from_int(b - a)
            }
            FieldRole::Elliptic { pair } => {
                let a = m.exponent(xs(pair)) as i64;
                let b = m.exponent(ys(pair)) as i64;
                Scalar::ratio_i(2 * (a - b), 1)
            }
            FieldRole::FocusRadial { first } => {
                let a = m.exponent(xs(first)) as i64;
                let b = m.exponent(ys(first)) as i64;
                let c = m.exponent(xs(first + 1)) as i64;
                let d = m.exponent(ys(first + 1)) as i64;
                Scalar::from_int(-a - b + c + d)
            }
            FieldRole::FocusRotation { first } => {
                let a = m.exponent(xs(first)) as i64;
                let b = m.exponent(ys(first)) as i64;
                let c = m.exponent(xs(first + 1)) as i64;
                let d = m.exponent(ys(first + 1)) as i64;
                Scalar::ratio_i(-a + b - c + d, 1)
            }
        })
    }
}

/// {f, g} = sum_i (df/dx_i dg/dy_i - df/dy_i dg/dx_i) for the Darboux form.
pub fn poisson_bracket(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    check_same_system(f.coords(), g.coords())?;
    let n = f.coords().pair_count();
    if f.coords().len() != 2 * n {
        return Err(Error::Invalid("Poisson bracket needs a symplectic (even) coordinate system".into()));
    }
    let mut out = Polynomial::zero(f.coords());
    for i in 1..=n {
        let xs = CoordinateSystem::x_slot(i);
        let ys = CoordinateSystem::y_slot(i);
        let t = &(&f.partial(xs) * &g.partial(ys)) - &(&f.partial(ys) * &g.partial(xs));
        out = &out + &t;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    fn poly(s: &str, basis: &WilliamsonBasis) -> Polynomial {
        parse_polynomial(s, basis.coords()).unwrap()
    }

    #[test]
    fn hamiltonians_of_each_block() {
        let e = WilliamsonBasis::new(&[BlockLabel::Elliptic]);
        assert_eq!(e.hamiltonian(1).unwrap(), poly("x1^2+y1^2", &e));

        let h = WilliamsonBasis::new(&[BlockLabel::Hyperbolic]);
        assert_eq!(h.hamiltonian(1).unwrap(), poly("x1*y1", &h));

        let ff = WilliamsonBasis::new(&[BlockLabel::FocusFocus]);
        assert_eq!(ff.hamiltonian(1).unwrap(), poly("x1*y1+x2*y2", &ff));
        assert_eq!(ff.hamiltonian(2).unwrap(), poly("x1*y2-x2*y1", &ff));
    }

    #[test]
    fn counts_and_structure() {
        let basis = WilliamsonBasis::new(&[
            BlockLabel::Elliptic,
            BlockLabel::Hyperbolic,
            BlockLabel::FocusFocus,
        ]);
        assert_eq!(basis.n(), 4);
        assert_eq!(basis.counts(), (1, 1, 1));
        assert!(matches!(basis.field_role(3).unwrap(), FieldRole::FocusRadial { first: 3 }));
        assert!(matches!(basis.field_role(4).unwrap(), FieldRole::FocusRotation { first: 3 }));
        assert!(basis.field_role(5).is_err());
    }

    #[test]
    fn field_application_examples() {
        let h = WilliamsonBasis::new(&[BlockLabel::Hyperbolic]);
        // X_i annihilates its own h_i
        assert!(h.apply_field(1, &poly("x1*y1", &h)).unwrap().is_zero());

        let e = WilliamsonBasis::new(&[BlockLabel::Elliptic]);
        assert_eq!(e.apply_field(1, &poly("x1", &e)).unwrap(), poly("-2*y1", &e));

        let ff = WilliamsonBasis::new(&[BlockLabel::FocusFocus]);
        assert_eq!(ff.apply_field(2, &poly("x1", &ff)).unwrap(), poly("x2", &ff));
    }

    #[test]
    fn fields_are_hamiltonian_for_their_h() {
        // X_i(g) = {h_i, g} for each block type
        for labels in [
            vec![BlockLabel::Elliptic],
            vec![BlockLabel::Hyperbolic],
            vec![BlockLabel::FocusFocus],
        ] {
            let basis = WilliamsonBasis::new(&labels);
            let g = poly("x1^2*y1 + 3*x1 - y1^3", &basis);
            for i in 1..=basis.n() {
                let h_i = basis.hamiltonian(i).unwrap();
                assert_eq!(
                    basis.apply_field(i, &g).unwrap(),
                    poisson_bracket(&h_i, &g).unwrap(),
                    "X_{i} vs bracket"
                );
            }
        }
    }

    #[test]
    fn poisson_bracket_examples() {
        let basis = WilliamsonBasis::new(&[BlockLabel::Hyperbolic]);
        assert_eq!(
            poisson_bracket(&poly("x1", &basis), &poly("y1", &basis)).unwrap(),
            poly("1", &basis)
        );
        assert_eq!(
            poisson_bracket(&poly("x1*y1", &basis), &poly("x1", &basis)).unwrap(),
            poly("-x1", &basis)
        );
    }

    #[test]
    fn basis_functions_commute() {
        let basis = WilliamsonBasis::new(&[
            BlockLabel::Elliptic,
            BlockLabel::Hyperbolic,
            BlockLabel::FocusFocus,
        ]);
        for i in 1..=basis.n() {
            for j in 1..=basis.n() {
                let hi = basis.hamiltonian(i).unwrap();
                let hj = basis.hamiltonian(j).unwrap();
                assert!(poisson_bracket(&hi, &hj).unwrap().is_zero(), "{{h_{i}, h_{j}}} != 0");
                // the h's are first integrals of each other
                assert!(basis.apply_field(i, &hj).unwrap().is_zero(), "X_{i}(h_{j}) != 0");
            }
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let h = WilliamsonBasis::new(&[BlockLabel::Hyperbolic]);
        // m = x^2 y: (-x d/dx + y d/dy)(x^2 y) = -x^2 y
        let m = Monomial::from_exponents(vec![2, 1]);
        assert_eq!(h.eigenvalue(1, &m).unwrap(), Scalar::from_int(-1));

        let e = WilliamsonBasis::new(&[BlockLabel::Elliptic]);
        // m = z: X(z) = 2iz
        let z = Monomial::from_exponents(vec![1, 0]);
        assert_eq!(e.eigenvalue(1, &z).unwrap(), Scalar::ratio_i(2, 1));

        // kernel monomials have eigenvalue zero
        let zzbar = Monomial::from_exponents(vec![3, 3]);
        assert!(e.eigenvalue(1, &zzbar).unwrap().is_zero());
        let ff = WilliamsonBasis::new(&[BlockLabel::FocusFocus]);
        let kernel = Monomial::from_exponents(vec![2, 1, 1, 2]); // u^2 ub v vb^2: a=d, b=c
        assert!(ff.eigenvalue(1, &kernel).unwrap().is_zero());
        assert!(ff.eigenvalue(2, &kernel).unwrap().is_zero());
    }
}
