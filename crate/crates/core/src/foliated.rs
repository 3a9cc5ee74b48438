//! Foliated k-forms on the singular foliation spanned by a Williamson
//! basis, the leafwise differential, Lie derivatives, and the exact
//! matrix assembly of the differential per homogeneous degree.
//!
//! A k-form is stored as its components on wedges of the n generators,
//! indexed by k-subsets of {1, ..., n}. Well-definedness requires each
//! component to vanish on the singular set of every field in its subset;
//! the differential provably preserves this, because X_j annihilates
//! exactly the monomials that survive on its own singular set.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::polyring::{check_same_system, parse_polynomial, Monomial, Polynomial};
use crate::scalar::Scalar;
use crate::williamson::WilliamsonBasis;

/// 1-based field indices packed into a bitmask (bit j-1 for index j).
pub fn mask_from_indices(indices: &[usize], n: usize) -> Result<u32> {
    let mut mask = 0u32;
    let mut last = 0usize;
    for &j in indices {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, max: n });
        }
        if j <= last {
            return Err(Error::Invalid("subset indices must be strictly increasing".into()));
        }
        last = j;
        mask |= 1 << (j - 1);
    }
    Ok(mask)
}

pub fn indices_from_mask(mask: u32) -> Vec<usize> {
    (1..=32).filter(|j| mask & (1 << (j - 1)) != 0).collect()
}

/// 1-based position of index j among the set bits of `mask`.
fn position_in_mask(mask: u32, j: usize) -> usize {
    (mask & ((1 << (j - 1)) - 1)).count_ones() as usize + 1
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

/// Degree-k foliated form: components on wedges of basis fields, absent
/// subsets denoting zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FoliatedKForm {
    basis: Arc<WilliamsonBasis>,
    degree: usize,
    components: BTreeMap<u32, Polynomial>,
}

impl FoliatedKForm {
    pub fn zero(basis: &Arc<WilliamsonBasis>, degree: usize) -> Self {
        FoliatedKForm { basis: basis.clone(), degree, components: BTreeMap::new() }
    }

    /// Builds a form from (subset, polynomial) pairs. Shape is validated
    /// (subset size, index range, coordinate system); the Σ-vanishing
    /// invariant is not — use `well_definedness_violation` / `d_f` which
    /// reject ill-formed forms.
    pub fn new<I>(basis: &Arc<WilliamsonBasis>, degree: usize, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Polynomial)>,
    {
        let mut form = FoliatedKForm::zero(basis, degree);
        for (indices, poly) in components {
            if indices.len() != degree {
                return Err(Error::Invalid(format!(
                    "component subset {indices:?} has size {} in a degree-{degree} form",
                    indices.len()
                )));
            }
            let mask = mask_from_indices(&indices, basis.n())?;
            check_same_system(poly.coords(), basis.coords())?;
            form.add_component(mask, poly);
        }
        Ok(form)
    }

    pub fn basis(&self) -> &Arc<WilliamsonBasis> {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> impl Iterator<Item = (&u32, &Polynomial)> {
        self.components.iter()
    }

    pub fn component(&self, mask: u32) -> Polynomial {
        self.components.get(&mask).cloned().unwrap_or_else(|| Polynomial::zero(self.basis.coords()))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub(crate) fn add_component(&mut self, mask: u32, poly: Polynomial) {
        if poly.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.components.entry(mask) {
            Entry::Vacant(e) => {
                e.insert(poly);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &poly;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &FoliatedKForm) -> Result<FoliatedKForm> {
        if self.degree != other.degree || self.basis.as_ref() != other.basis.as_ref() {
            return Err(Error::Invalid("form degree or basis mismatch in +".into()));
        }
        let mut out = self.clone();
        for (&mask, poly) in &other.components {
            out.add_component(mask, poly.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &FoliatedKForm) -> Result<FoliatedKForm> {
        self.checked_add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> FoliatedKForm {
        let mut out = FoliatedKForm::zero(&self.basis, self.degree);
        for (&mask, poly) in &self.components {
            out.add_component(mask, poly.scale(c));
        }
        out
    }

    /// First (subset, field) violating the Σ-vanishing invariant, if any.
    pub fn well_definedness_violation(&self) -> Option<(Vec<usize>, usize)> {
        for (&mask, poly) in &self.components {
            for j in indices_from_mask(mask) {
                let slots = self.basis.sigma_slots(j).expect("mask indices are valid");
                if !poly.vanishes_on(&slots) {
                    return Some((indices_from_mask(mask), j));
                }
            }
        }
        None
    }

    pub fn is_well_defined(&self) -> bool {
        self.well_definedness_violation().is_none()
    }

    /// The leafwise exterior derivative. Bracket terms are absent because
    /// the basis fields commute. Rejects ill-formed input; the output
    /// satisfies the Σ invariant again.
    pub fn d_f(&self) -> Result<FoliatedKForm> {
        if let Some((subset, field)) = self.well_definedness_violation() {
            return Err(Error::IllFormedForm { subset, field });
        }
        let n = self.basis.n();
        let mut out = FoliatedKForm::zero(&self.basis, self.degree + 1);
        for (&mask, poly) in &self.components {
            for j in 1..=n {
                let bit = 1u32 << (j - 1);
                if mask & bit != 0 {
                    continue;
                }
                let bigger = mask | bit;
                let applied = self.basis.apply_field(j, poly)?;
                let pos = position_in_mask(bigger, j);
                let signed = if pos % 2 == 1 { applied } else { applied.scale(&Scalar::from_int(-1)) };
                out.add_component(bigger, signed);
            }
        }
        Ok(out)
    }

    /// Lie derivative along X_i; with commuting generators it acts
    /// componentwise.
    pub fn lie_derivative(&self, i: usize) -> Result<FoliatedKForm> {
        self.basis.field_role(i)?;
        let mut out = FoliatedKForm::zero(&self.basis, self.degree);
        for (&mask, poly) in &self.components {
            out.add_component(mask, self.basis.apply_field(i, poly)?);
        }
        Ok(out)
    }

    /// Homogeneous degrees appearing in any component.
    pub fn homogeneous_degrees(&self) -> Vec<u32> {
        let mut set = std::collections::BTreeSet::new();
        for poly in self.components.values() {
            for (d, _) in poly.homogeneous_parts() {
                set.insert(d);
            }
        }
        set.into_iter().collect()
    }

    pub fn homogeneous_component(&self, d: u32) -> FoliatedKForm {
        let mut out = FoliatedKForm::zero(&self.basis, self.degree);
        for (&mask, poly) in &self.components {
            out.add_component(mask, poly.homogeneous_component(d));
        }
        out
    }

    /// JSON encoding: {"k": 2, "components": {"1,2": "<polynomial text>"}};
    /// subsets are comma-joined increasing 1-based indices.
    pub fn to_json(&self) -> serde_json::Value {
        let mut comps = serde_json::Map::new();
        for (&mask, poly) in &self.components {
            let key = indices_from_mask(mask)
                .iter()
                .map(|j| j.to_string())
                .collect::<Vec<_>>()
                .join(",");
            comps.insert(key, serde_json::Value::String(poly.to_string()));
        }
        serde_json::json!({ "k": self.degree, "components": comps })
    }

    pub fn from_json(value: &serde_json::Value, basis: &Arc<WilliamsonBasis>) -> Result<Self> {
        let k = value
            .get("k")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Invalid("form: missing integer field `k`".into()))?
            as usize;
        let comps = value
            .get("components")
            .and_then(|v| v.as_object())
            .ok_or_else(|| Error::Invalid("form: missing object field `components`".into()))?;
        let mut parts = Vec::new();
        for (key, text) in comps {
            let indices = parse_subset_key(key)?;
            let text = text
                .as_str()
                .ok_or_else(|| Error::Invalid(format!("form: component `{key}` must be a string")))?;
            let poly = parse_polynomial(text, basis.coords())?;
            parts.push((indices, poly));
        }
        FoliatedKForm::new(basis, k, parts)
    }
}

pub(crate) fn parse_subset_key(key: &str) -> Result<Vec<usize>> {
    if key.trim().is_empty() {
        return Ok(Vec::new());
    }
    key.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Invalid(format!("bad subset key `{key}`")))
        })
        .collect()
}

/// Ordered basis of the homogeneous-degree-d slice of admissible k-forms:
/// elementary forms (single subset, single monomial satisfying the Σ
/// invariant), subsets ascending, monomials descending graded-lex.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    basis: Arc<WilliamsonBasis>,
    k: usize,
    d: u32,
    elements: Vec<(u32, Monomial)>,
    index: HashMap<(u32, Monomial), usize>,
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, slot: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if slot == nvars - 1 {
            cur.push(left as u16);
            out.push(Monomial::from_exponents(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e as u16);
            rec(nvars, slot + 1, left - e, cur, out);
            cur.pop();
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial::unit(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(nvars, 0, d, &mut Vec::new(), &mut out);
    out.sort();
    out.reverse();
    out
}

pub fn basis_forms(basis: &Arc<WilliamsonBasis>, k: usize, d: u32) -> GradedBasis {
    let n = basis.n();
    let monos = monomials_of_degree(basis.coords().len(), d);
    let mut elements = Vec::new();
    if k <= n {
        for mask in subsets_of_size(n, k) {
            let slot_sets: Vec<Vec<usize>> = indices_from_mask(mask)
                .iter()
                .map(|&j| basis.sigma_slots(j).expect("valid index"))
                .collect();
            for m in &monos {
                if slot_sets.iter().all(|slots| m.degree_on(slots) > 0) {
                    elements.push((mask, m.clone()));
                }
            }
        }
    }
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    GradedBasis { basis: basis.clone(), k, d, elements, index }
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn elements(&self) -> &[(u32, Monomial)] {
        &self.elements
    }

    pub fn element_form(&self, idx: usize) -> FoliatedKForm {
        let (mask, m) = &self.elements[idx];
        let poly =
            Polynomial::from_terms(self.basis.coords(), [(m.clone(), Scalar::one())]);
        let mut form = FoliatedKForm::zero(&self.basis, self.k);
        form.add_component(*mask, poly);
        form
    }

    /// Expands a homogeneous admissible form of matching degree over this
    /// basis; errors if the form has terms outside the slice.
    pub fn form_to_vector(&self, form: &FoliatedKForm) -> Result<Vec<Scalar>> {
        if form.degree() != self.k {
            return Err(Error::Invalid(format!(
                "form degree {} does not match basis degree {}",
                form.degree(),
                self.k
            )));
        }
        let mut v = vec![Scalar::zero(); self.elements.len()];
        for (&mask, poly) in &form.components {
            for (m, c) in poly.terms() {
                match self.index.get(&(mask, m.clone())) {
                    Some(&i) => v[i] = c.clone(),
                    None => {
                        return Err(Error::Invalid(format!(
                            "form term {:?} on subset {:?} is outside the (k={}, d={}) slice",
                            m,
                            indices_from_mask(mask),
                            self.k,
                            self.d
                        )))
                    }
                }
            }
        }
        Ok(v)
    }

    pub fn vector_to_form(&self, v: &[Scalar]) -> Result<FoliatedKForm> {
        if v.len() != self.elements.len() {
            return Err(Error::Invalid("vector length does not match basis".into()));
        }
        let mut form = FoliatedKForm::zero(&self.basis, self.k);
        for (c, (mask, m)) in v.iter().zip(&self.elements) {
            if !c.is_zero() {
                form.add_component(
                    *mask,
                    Polynomial::from_terms(self.basis.coords(), [(m.clone(), c.clone())]),
                );
            }
        }
        Ok(form)
    }
}

/// Exact matrix of d_F from the (k, d) slice to the (k+1, d) slice in the
/// two graded bases.
pub fn assemble_matrix(basis: &Arc<WilliamsonBasis>, k: usize, d: u32) -> ExactMatrix {
    let dom = basis_forms(basis, k, d);
    let cod = basis_forms(basis, k + 1, d);
    differential_matrix(&dom, &cod)
}

/// The same, reusing already-built graded bases.
pub fn differential_matrix(dom: &GradedBasis, cod: &GradedBasis) -> ExactMatrix {
    assert_eq!(dom.k + 1, cod.k, "codomain degree must be k+1");
    assert_eq!(dom.d, cod.d, "slices must share the homogeneous degree");
    let basis = &dom.basis;
    let n = basis.n();
    let mut matrix = ExactMatrix::new(cod.len(), dom.len());
    for (col, (mask, m)) in dom.elements.iter().enumerate() {
        let poly = Polynomial::from_terms(basis.coords(), [(m.clone(), Scalar::one())]);
        for j in 1..=n {
            let bit = 1u32 << (j - 1);
            if mask & bit != 0 {
                continue;
            }
            let bigger = mask | bit;
            let applied = basis.apply_field(j, &poly).expect("valid index");
            if applied.is_zero() {
                continue;
            }
            let pos = position_in_mask(bigger, j);
            let sign = if pos % 2 == 1 { Scalar::one() } else { Scalar::from_int(-1) };
            for (m2, c) in applied.terms() {
                let row = cod
                    .index
                    .get(&(bigger, m2.clone()))
                    .copied()
                    .expect("d_F image stays admissible");
                matrix.add(row, col, &sign * c);
            }
        }
    }
    matrix
}
