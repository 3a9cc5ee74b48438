//! Constructive decompositions along the singular basis fields:
//! f = f_i + X_i(F_i) with X_i(f_i) = 0, and the simultaneous version
//! g_i = f_i + X_i(G) for cocycles of the deformation complex.
//!
//! Everything is solved per monomial in the complex chart, where each
//! X_i acts diagonally: the kernel part is the projection onto the
//! zero-eigenvalue monomials and the potential is the eigen-inverse on
//! the complement. This makes the outputs canonical (the potential has
//! no component along the kernel) and independent of any iteration
//! order.

use std::sync::Arc;

use crate::chart::ComplexChart;
use crate::error::{Error, Result};
use crate::polyring::{check_same_system, CoordinateSystem, Monomial, Polynomial};
use crate::scalar::Scalar;
use crate::williamson::{FieldRole, WilliamsonBasis};

/// f = kernel_part + X_i(potential), with X_i(kernel_part) = 0.
#[derive(Debug, Clone)]
pub struct DecompositionResult {
    pub kernel_part: Polynomial,
    pub potential: Polynomial,
    pub block: usize,
}

/// Splits g as obstruction + X_i(F). The obstruction is the projection
/// of g onto the zero-eigenvalue chart monomials of X_i; zero obstruction
/// signals full solvability of X_i(F) = g.
pub fn solve_linear_pde(
    basis: &WilliamsonBasis,
    i: usize,
    g: &Polynomial,
) -> Result<(Polynomial, Polynomial)> {
    check_same_system(g.coords(), basis.coords())?;
    basis.field_role(i)?;
    let chart = ComplexChart::new(basis);
    let q = chart.complexify_any(g)?;
    let mut potential = Polynomial::zero(chart.chart_coords());
    let mut obstruction = Polynomial::zero(chart.chart_coords());
    for (m, c) in q.terms() {
        let lambda = basis.eigenvalue(i, m)?;
        if lambda.is_zero() {
            obstruction.add_term(m.clone(), c.clone());
        } else {
            potential.add_term(m.clone(), c / &lambda);
        }
    }
    Ok((chart.realify_any(&potential)?, chart.realify_any(&obstruction)?))
}

/// The decomposition lemma in the polynomial category: kernel projection
/// plus eigen-inverse, both monomial-supported, so annihilation by any
/// X_j and vanishing on any singular set are inherited by both outputs.
pub fn decompose(basis: &WilliamsonBasis, i: usize, f: &Polynomial) -> Result<DecompositionResult> {
    let (potential, kernel_part) = solve_linear_pde(basis, i, f)?;
    Ok(DecompositionResult { kernel_part, potential, block: i })
}

/// A function annihilated by a block's field(s) rewritten through the
/// block's quadratics: the coefficient polynomial lives on a system where
/// the block's pair coordinates are replaced by formal h variables.
#[derive(Debug, Clone)]
pub struct KernelDependence {
    pub block: usize,
    system: Arc<CoordinateSystem>,
    poly: Polynomial,
    /// target slot -> originating field index for formal h variables
    h_slots: Vec<(usize, usize)>,
    /// real slot -> target slot for the untouched coordinates
    real_slots: Vec<(usize, usize)>,
}

impl KernelDependence {
    pub fn system(&self) -> &Arc<CoordinateSystem> {
        &self.system
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    /// Substitutes the actual quadratics back in; inverse of
    /// `kernel_dependence` on its image.
    pub fn expand(&self, basis: &WilliamsonBasis) -> Result<Polynomial> {
        let real = basis.coords();
        let mut images = vec![Polynomial::zero(real); self.system.len()];
        for &(slot, field) in &self.h_slots {
            images[slot] = basis.hamiltonian(field)?;
        }
        for &(real_slot, target_slot) in &self.real_slots {
            images[target_slot] = Polynomial::variable(real, real_slot);
        }
        self.poly.substitute(real, &images)
    }
}

/// Expresses a polynomial in the kernel of the block's field(s) through
/// h_i (elliptic/hyperbolic) or the pair (h_i, h_{i+1}) (focus-focus).
/// For a focus-focus block the joint kernel of both fields is required;
/// otherwise the dependence does not factor through the quadratics.
/// Fails with the residual X(f) of the first violated field.
pub fn kernel_dependence(
    basis: &WilliamsonBasis,
    i: usize,
    f: &Polynomial,
) -> Result<KernelDependence> {
    check_same_system(f.coords(), basis.coords())?;
    let role = basis.field_role(i)?;
    let block_fields: Vec<usize> = match role {
        FieldRole::Elliptic { .. } | FieldRole::Hyperbolic { .. } => vec![i],
        FieldRole::FocusRadial { first } | FieldRole::FocusRotation { first } => {
            vec![first, first + 1]
        }
    };
    for &j in &block_fields {
        let residual = basis.apply_field(j, f)?;
        if !residual.is_zero() {
            return Err(Error::NotInKernel { block: j, residual: residual.to_string() });
        }
    }

    // Target system: formal h variables for the active block, the real
    // names for everything else.
    let active_pairs: Vec<usize> = match role {
        FieldRole::Elliptic { pair } | FieldRole::Hyperbolic { pair } => vec![pair],
        FieldRole::FocusRadial { first } | FieldRole::FocusRotation { first } => {
            vec![first, first + 1]
        }
    };
    let n = basis.n();
    let mut names = Vec::new();
    let mut h_slots = Vec::new();
    let mut real_slots = Vec::new();
    let mut pair = 1;
    while pair <= n {
        if active_pairs.contains(&pair) {
            for &p in &active_pairs {
                h_slots.push((names.len(), p));
                names.push(format!("h{p}"));
            }
            pair += active_pairs.len();
        } else {
            for slot in [CoordinateSystem::x_slot(pair), CoordinateSystem::y_slot(pair)] {
                real_slots.push((slot, names.len()));
                names.push(basis.coords().name(slot).to_string());
            }
            pair += 1;
        }
    }
    let system = CoordinateSystem::from_names(names);

    let chart = ComplexChart::new(basis);
    let q = chart.complexify_any(f)?;
    let active_slots = basis.block_slots(i)?;

    // h images of the active kernel monomials, as target polynomials
    let h_var: std::collections::HashMap<usize, Polynomial> = h_slots
        .iter()
        .map(|&(slot, field)| (field, Polynomial::variable(&system, slot)))
        .collect();

    let mut out = Polynomial::zero(&system);
    for (m, c) in q.terms() {
        // split the monomial into the active-block part and the rest
        let mut rest = m.exponents().to_vec();
        for &s in &active_slots {
            rest[s] = 0;
        }
        let rest_poly = chart.realify_any(&Polynomial::from_terms(
            chart.chart_coords(),
            [(Monomial::from_exponents(rest), Scalar::one())],
        ))?;
        // transfer the (real, non-active) monomials to the target system
        let mut rest_target = Polynomial::zero(&system);
        for (rm, rc) in rest_poly.terms() {
            let mut exps = vec![0u16; system.len()];
            for &(real_slot, target_slot) in &real_slots {
                exps[target_slot] = rm.exponent(real_slot);
            }
            rest_target.add_term(Monomial::from_exponents(exps), rc.clone());
        }

        let h_part = match role {
            FieldRole::Elliptic { pair } | FieldRole::Hyperbolic { pair } => {
                // kernel monomials have equal exponents on the pair
                let a = m.exponent(CoordinateSystem::x_slot(pair));
                debug_assert_eq!(a, m.exponent(CoordinateSystem::y_slot(pair)));
                h_var[&i].pow(a as u32)
            }
            FieldRole::FocusRadial { first } | FieldRole::FocusRotation { first } => {
                // kernel monomials are (u vbar)^a (ubar v)^b with
                // u vbar = h_i - i h_{i+1} and ubar v = h_i + i h_{i+1}
                let a = m.exponent(CoordinateSystem::x_slot(first));
                let b = m.exponent(CoordinateSystem::y_slot(first));
                debug_assert_eq!(a, m.exponent(CoordinateSystem::y_slot(first + 1)));
                debug_assert_eq!(b, m.exponent(CoordinateSystem::x_slot(first + 1)));
                let hi = &h_var[&first];
                let hr = &h_var[&(first + 1)];
                let minus = &hi.clone() - &hr.scale(&Scalar::i());
                let plus = &hi.clone() + &hr.scale(&Scalar::i());
                &minus.pow(a as u32) * &plus.pow(b as u32)
            }
        };
        out = &out + &(&h_part.scale(c) * &rest_target);
    }

    Ok(KernelDependence { block: i, system, poly: out, h_slots, real_slots })
}

/// Projection onto the monomials annihilated by the first r basis fields
/// (the basic functions of the subfamily, in the polynomial category).
pub fn joint_kernel_projection(
    basis: &WilliamsonBasis,
    r: usize,
    p: &Polynomial,
) -> Result<Polynomial> {
    if r == 0 || r > basis.n() {
        return Err(Error::IndexOutOfRange { index: r, max: basis.n() });
    }
    let chart = ComplexChart::new(basis);
    let q = chart.complexify_any(p)?;
    let mut kept = Polynomial::zero(chart.chart_coords());
    'outer: for (m, c) in q.terms() {
        for i in 1..=r {
            if !basis.eigenvalue(i, m)?.is_zero() {
                continue 'outer;
            }
        }
        kept.add_term(m.clone(), c.clone());
    }
    chart.realify_any(&kept)
}

/// The 1-cochains (g_1, ..., g_r), r <= n, of the deformation complex.
#[derive(Debug, Clone)]
pub struct DeformationCochain {
    basis: Arc<WilliamsonBasis>,
    components: Vec<Polynomial>,
}

impl DeformationCochain {
    pub fn new(basis: &Arc<WilliamsonBasis>, components: Vec<Polynomial>) -> Result<Self> {
        if components.is_empty() || components.len() > basis.n() {
            return Err(Error::Invalid(format!(
                "a cochain needs between 1 and n = {} components, got {}",
                basis.n(),
                components.len()
            )));
        }
        for g in &components {
            check_same_system(g.coords(), basis.coords())?;
        }
        Ok(DeformationCochain { basis: basis.clone(), components })
    }

    pub fn basis(&self) -> &Arc<WilliamsonBasis> {
        &self.basis
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn r(&self) -> usize {
        self.components.len()
    }

    /// First pair (i, j) with X_i(g_j) != X_j(g_i), or None for a cocycle.
    pub fn first_violation(&self) -> Option<(usize, usize)> {
        let r = self.r();
        for i in 1..=r {
            for j in (i + 1)..=r {
                let lhs = self.basis.apply_field(i, &self.components[j - 1]).expect("valid index");
                let rhs = self.basis.apply_field(j, &self.components[i - 1]).expect("valid index");
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_cocycle(&self) -> bool {
        self.first_violation().is_none()
    }
}

/// g_i = f_i + X_i(G) with every f_i annihilated by all r fields.
#[derive(Debug, Clone)]
pub struct DeformationSolution {
    pub potential: Polynomial,
    pub basic_parts: Vec<Polynomial>,
}

/// Constructive vanishing of the first deformation cohomology: for a
/// cocycle, every monomial outside the joint kernel is reached by each
/// X_i with consistent coefficients, so a single potential G serves all
/// components; the joint-kernel projections are the basic parts. The
/// canonical G has no component along the joint kernel.
pub fn solve_deformation(cochain: &DeformationCochain) -> Result<DeformationSolution> {
    if let Some((i, j)) = cochain.first_violation() {
        return Err(Error::NotCocycle { i, j });
    }
    let basis = cochain.basis();
    let r = cochain.r();
    let chart = ComplexChart::new(basis);
    let comps: Vec<Polynomial> = cochain
        .components()
        .iter()
        .map(|g| chart.complexify_any(g))
        .collect::<Result<_>>()?;

    let mut monomials: std::collections::BTreeSet<Monomial> = std::collections::BTreeSet::new();
    for q in &comps {
        monomials.extend(q.terms().map(|(m, _)| m.clone()));
    }

    let mut potential = Polynomial::zero(chart.chart_coords());
    let mut basics: Vec<Polynomial> =
        (0..r).map(|_| Polynomial::zero(chart.chart_coords())).collect();
    for m in &monomials {
        let lambdas: Vec<Scalar> =
            (1..=r).map(|i| basis.eigenvalue(i, m)).collect::<Result<_>>()?;
        match lambdas.iter().position(|l| !l.is_zero()) {
            None => {
                // joint kernel: goes to the basic parts untouched
                for (q, basic) in comps.iter().zip(basics.iter_mut()) {
                    let c = q.coefficient(m);
                    basic.add_term(m.clone(), c);
                }
            }
            Some(j0) => {
                let c = comps[j0].coefficient(m);
                if !c.is_zero() {
                    potential.add_term(m.clone(), &c / &lambdas[j0]);
                }
            }
        }
    }

    Ok(DeformationSolution {
        potential: chart.realify_any(&potential)?,
        basic_parts: basics
            .iter()
            .map(|b| chart.realify_any(b))
            .collect::<Result<_>>()?,
    })
}
