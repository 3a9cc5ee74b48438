//! Foliated cohomology per (form degree k, homogeneous degree d): exact
//! dimensions from matrix ranks, the combinatorial dimension count from
//! the h-monomial description of the invariant forms, generator forms,
//! and the constructive splitting alpha = beta + d_F(zeta) with beta
//! annihilated by every Lie derivative.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::json;

use crate::chart::ComplexChart;
use crate::error::{Error, Result};
use crate::foliated::{basis_forms, differential_matrix, indices_from_mask, FoliatedKForm};
use crate::polyring::{Monomial, Polynomial};
use crate::scalar::Scalar;
use crate::williamson::{BlockKind, WilliamsonBasis};

/// One (k, d) slice of the cohomology computation.
#[derive(Debug, Clone)]
pub struct CohomologySlice {
    pub k: usize,
    pub d: u32,
    pub dim_kernel: usize,
    pub dim_image_from_below: usize,
    pub dim_h: usize,
    /// Combinatorial count; None when the type has focus-focus blocks or
    /// the oracle was not requested.
    pub oracle: Option<usize>,
    pub generators: Vec<FoliatedKForm>,
}

impl CohomologySlice {
    pub fn oracle_matches(&self) -> Option<bool> {
        self.oracle.map(|o| o == self.dim_h)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "k": self.k,
            "d": self.d,
            "dim_kernel": self.dim_kernel,
            "dim_image_from_below": self.dim_image_from_below,
            "dimH": self.dim_h,
            "oracle": self.oracle,
            "oracle_match": self.oracle_matches(),
            "generators": self.generators.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Full report over a set of slices, serializable as JSON.
#[derive(Debug, Clone)]
pub struct CohomologyReport {
    pub basis: Arc<WilliamsonBasis>,
    pub slices: Vec<CohomologySlice>,
}

impl CohomologyReport {
    pub fn all_oracles_match(&self) -> bool {
        self.slices.iter().all(|s| s.oracle_matches().unwrap_or(true))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "type": { "blocks": self.basis.labels().iter().map(|l| l.to_string()).collect::<Vec<_>>() },
            "slices": self.slices.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Exponent vectors mu in N^n with |mu| = s.
fn compositions(n: usize, s: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, slot: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slot == n - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, slot + 1, left - e, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return if s == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(n, 0, s, &mut Vec::new(), &mut out);
    out
}

/// Dimension count from the invariant description: one summand per
/// k-subset J, counting monomials in (h_1, ..., h_n) of homogeneous
/// degree d = 2|mu| whose factors cover J (mu_j >= 1 for j in J, forcing
/// the component to vanish on the corresponding singular sets).
/// Defined only for types without focus-focus blocks.
pub fn oracle_dimension(basis: &WilliamsonBasis, k: usize, d: u32) -> Result<usize> {
    if basis.has_focus_focus() {
        return Err(Error::NoOracleForFocusFocus);
    }
    let n = basis.n();
    if k > n {
        return Ok(0);
    }
    if !d.is_multiple_of(2) {
        return Ok(0); // the h_i are quadratic
    }
    let s = d / 2;
    let mut count = 0usize;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let required = indices_from_mask(mask);
        for mu in compositions(n, s) {
            if required.iter().all(|&j| mu[j - 1] >= 1) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Fields whose block carries positive degree in h^mu; for a focus-focus
/// block the two fields share the block, so either both qualify or
/// neither does.
fn admissible_fields(basis: &WilliamsonBasis, mu: &[u32]) -> Vec<usize> {
    let mut fields = Vec::new();
    for block in basis.blocks() {
        match *block {
            BlockKind::Elliptic { pair } | BlockKind::Hyperbolic { pair } => {
                if mu[pair - 1] >= 1 {
                    fields.push(pair);
                }
            }
            BlockKind::FocusFocus { first } => {
                if mu[first - 1] + mu[first] >= 1 {
                    fields.push(first);
                    fields.push(first + 1);
                }
            }
        }
    }
    fields
}

/// Generator forms of the (k, d) slice: h^mu on each admissible k-wedge.
fn generator_forms(basis: &Arc<WilliamsonBasis>, k: usize, d: u32) -> Result<Vec<FoliatedKForm>> {
    if !d.is_multiple_of(2) || k > basis.n() {
        return Ok(Vec::new());
    }
    let n = basis.n();
    let mut out = Vec::new();
    for mu in compositions(n, d / 2) {
        let fields = admissible_fields(basis, &mu);
        if fields.len() < k {
            continue;
        }
        let mut h_mu = Polynomial::one(basis.coords());
        for (j, &e) in mu.iter().enumerate() {
            if e > 0 {
                h_mu = &h_mu * &basis.hamiltonian(j + 1)?.pow(e);
            }
        }
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let subset = indices_from_mask(mask);
            if !subset.iter().all(|j| fields.contains(j)) {
                continue;
            }
            out.push(FoliatedKForm::new(basis, k, vec![(subset, h_mu.clone())])?);
        }
    }
    Ok(out)
}

/// Computes one slice from exact ranks of the assembled differentials,
/// with generators cross-checked for Lie-derivative annihilation and
/// independence modulo the image (rank augmentation).
pub fn cohomology(
    basis: &Arc<WilliamsonBasis>,
    k: usize,
    d: u32,
    with_oracle: bool,
) -> Result<CohomologySlice> {
    let n = basis.n();
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, max: n });
    }
    let dom = basis_forms(basis, k, d);
    let cod = basis_forms(basis, k + 1, d);
    let m_up = differential_matrix(&dom, &cod);
    let rank_up = m_up.rank();
    let dim_kernel = dom.len() - rank_up;

    let (m_down, rank_down) = if k > 0 {
        let dom_below = basis_forms(basis, k - 1, d);
        let m = differential_matrix(&dom_below, &dom);
        let r = m.rank();
        (Some(m), r)
    } else {
        (None, 0)
    };
    let dim_h = dim_kernel - rank_down;

    let generators = generator_forms(basis, k, d)?;
    if generators.len() != dim_h {
        return Err(Error::Internal(format!(
            "generator count {} != dim_H {} at (k={k}, d={d})",
            generators.len(),
            dim_h
        )));
    }
    for (g, idx) in generators.iter().zip(0..) {
        for i in 1..=n {
            if !g.lie_derivative(i)?.is_zero() {
                return Err(Error::Internal(format!(
                    "generator {idx} at (k={k}, d={d}) is not Lie-invariant along X_{i}"
                )));
            }
        }
    }
    let gen_columns: Vec<Vec<Scalar>> = generators
        .iter()
        .map(|g| dom.form_to_vector(g))
        .collect::<Result<_>>()?;
    let augmented_rank = match &m_down {
        Some(m) => m.rank_with_columns(&gen_columns),
        None => crate::linalg::ExactMatrix::new(dom.len(), 0).rank_with_columns(&gen_columns),
    };
    if augmented_rank != rank_down + generators.len() {
        return Err(Error::Internal(format!(
            "generators are not independent modulo the image at (k={k}, d={d})"
        )));
    }

    let oracle = if with_oracle && !basis.has_focus_focus() {
        Some(oracle_dimension(basis, k, d)?)
    } else {
        None
    };

    Ok(CohomologySlice { k, d, dim_kernel, dim_image_from_below: rank_down, dim_h, oracle, generators })
}

/// beta + d_F(zeta) with Lie-invariant beta; beta = 0 iff the input is
/// exact.
#[derive(Debug, Clone)]
pub struct NormalFormSplit {
    pub beta: FoliatedKForm,
    pub zeta: FoliatedKForm,
}

fn closure_residual(alpha: &FoliatedKForm) -> Result<Option<FoliatedKForm>> {
    let d = alpha.d_f()?;
    Ok(if d.is_zero() { None } else { Some(d) })
}

/// Splits a closed form into its Lie-invariant part and an exact part.
///
/// Per chart monomial the complex is a Koszul complex on the eigenvalue
/// vector: monomials with all eigenvalues zero form beta; on the rest a
/// closed element is contracted against the first field with nonzero
/// eigenvalue, which yields an exact primitive with admissible
/// components. This realizes the iterated block decompositions in one
/// monomial-local pass; beta is unique, zeta is the canonical gauge.
pub fn normal_form_split(alpha: &FoliatedKForm) -> Result<NormalFormSplit> {
    if let Some(residual) = closure_residual(alpha)? {
        return Err(Error::NotClosed { residual: residual.to_json().to_string() });
    }
    let basis = alpha.basis().clone();
    let n = basis.n();
    let k = alpha.degree();
    let chart = ComplexChart::new(&basis);

    // group chart coefficients per monomial
    let mut per_monomial: BTreeMap<Monomial, Vec<(u32, Scalar)>> = BTreeMap::new();
    for (&mask, poly) in alpha.components() {
        let q = chart.complexify_any(poly)?;
        for (m, c) in q.terms() {
            per_monomial.entry(m.clone()).or_default().push((mask, c.clone()));
        }
    }

    let mut beta_chart: BTreeMap<u32, Polynomial> = BTreeMap::new();
    let mut zeta_chart: BTreeMap<u32, Polynomial> = BTreeMap::new();
    let chart_coords = chart.chart_coords();
    for (m, entries) in &per_monomial {
        let lambdas: Vec<Scalar> =
            (1..=n).map(|i| basis.eigenvalue(i, m)).collect::<Result<_>>()?;
        match lambdas.iter().position(|l| !l.is_zero()) {
            None => {
                for (mask, c) in entries {
                    beta_chart
                        .entry(*mask)
                        .or_insert_with(|| Polynomial::zero(chart_coords))
                        .add_term(m.clone(), c.clone());
                }
            }
            Some(j0_idx) => {
                let j0 = j0_idx + 1;
                let bit = 1u32 << (j0 - 1);
                let lambda = &lambdas[j0_idx];
                for (mask, c) in entries {
                    if mask & bit == 0 {
                        continue;
                    }
                    // contraction with e_{j0}: sign (-1)^(pos-1)
                    let pos = (mask & (bit - 1)).count_ones() as usize + 1;
                    let mut v = c / lambda;
                    if pos.is_multiple_of(2) {
                        v = -v;
                    }
                    zeta_chart
                        .entry(mask & !bit)
                        .or_insert_with(|| Polynomial::zero(chart_coords))
                        .add_term(m.clone(), v);
                }
            }
        }
    }

    let mut beta = FoliatedKForm::zero(&basis, k);
    for (mask, poly) in beta_chart {
        beta.add_component(mask, chart.realify_any(&poly)?);
    }
    let mut zeta = FoliatedKForm::zero(&basis, k.saturating_sub(1));
    for (mask, poly) in zeta_chart {
        zeta.add_component(mask, chart.realify_any(&poly)?);
    }
    Ok(NormalFormSplit { beta, zeta })
}

/// Exact linear solve for a primitive, per homogeneous degree; returns
/// None when the closed form is not exact. Independent of the monomial
/// route in `normal_form_split`.
pub fn is_exact(alpha: &FoliatedKForm) -> Result<Option<FoliatedKForm>> {
    if alpha.degree() == 0 {
        return Err(Error::Invalid("exactness is defined for degree >= 1".into()));
    }
    if let Some(residual) = closure_residual(alpha)? {
        return Err(Error::NotClosed { residual: residual.to_json().to_string() });
    }
    let basis = alpha.basis().clone();
    let k = alpha.degree();
    let mut primitive = FoliatedKForm::zero(&basis, k - 1);
    for d in alpha.homogeneous_degrees() {
        let slice = alpha.homogeneous_component(d);
        let dom = basis_forms(&basis, k - 1, d);
        let cod = basis_forms(&basis, k, d);
        let matrix = differential_matrix(&dom, &cod);
        let rhs = cod.form_to_vector(&slice)?;
        match matrix.solve(&rhs) {
            None => return Ok(None),
            Some(x) => {
                primitive = primitive.checked_add(&dom.vector_to_form(&x)?)?;
            }
        }
    }
    Ok(Some(primitive))
}

/// Convenience driver: slices for every requested (k, d).
pub fn compute_report(
    basis: &Arc<WilliamsonBasis>,
    ks: &[usize],
    ds: &[u32],
    with_oracle: bool,
) -> Result<CohomologyReport> {
    let mut slices = Vec::new();
    for &d in ds {
        for &k in ks {
            slices.push(cohomology(basis, k, d, with_oracle)?);
        }
    }
    Ok(CohomologyReport { basis: basis.clone(), slices })
}
