//! Homotopy operator for the regular local model: coordinates
//! (p_1, ..., p_m) with the foliation spanned by the first n directions,
//! retracted by scaling the leaf coordinates. The operator I satisfies
//! alpha - phi_0^*(alpha) = I(d alpha) + d(I alpha), which proves the
//! vanishing of the foliated cohomology in degree >= 1.
//!
//! The time-dependent field of the retraction is never materialized:
//! contracting with the radial leafwise field and integrating the scaling
//! pullback gives, per monomial of leafwise degree l in a k-form, the
//! exact rational factor 1/(l + k).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::foliated::{indices_from_mask, mask_from_indices, parse_subset_key};
use crate::polyring::{check_same_system, parse_polynomial, CoordinateSystem, Polynomial};
use crate::scalar::Scalar;

/// Local model R^m foliated by the first n coordinate directions.
#[derive(Debug, Clone)]
pub struct RegularModel {
    m: usize,
    n: usize,
    coords: Arc<CoordinateSystem>,
}

impl PartialEq for RegularModel {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.n == other.n
    }
}

impl RegularModel {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if n == 0 || n > m {
            return Err(Error::Invalid(format!("need 1 <= n <= m, got n={n}, m={m}")));
        }
        Ok(RegularModel { m, n, coords: CoordinateSystem::cartesian(m) })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &Arc<CoordinateSystem> {
        &self.coords
    }

    pub fn leaf_slots(&self) -> Vec<usize> {
        (0..self.n).collect()
    }
}

/// Foliated k-form on the regular model: components on k-subsets of the
/// leaf directions, with polynomial coefficients in all m coordinates.
/// No vanishing constraint applies (the generators never vanish).
#[derive(Debug, Clone, PartialEq)]
pub struct RegularFoliatedForm {
    model: RegularModel,
    degree: usize,
    components: BTreeMap<u32, Polynomial>,
}

impl RegularFoliatedForm {
    pub fn zero(model: &RegularModel, degree: usize) -> Self {
        RegularFoliatedForm { model: model.clone(), degree, components: BTreeMap::new() }
    }

    pub fn new<I>(model: &RegularModel, degree: usize, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Polynomial)>,
    {
        let mut form = RegularFoliatedForm::zero(model, degree);
        for (indices, poly) in components {
            if indices.len() != degree {
                return Err(Error::Invalid(format!(
                    "component subset {indices:?} has size {} in a degree-{degree} form",
                    indices.len()
                )));
            }
            let mask = mask_from_indices(&indices, model.n())?;
            check_same_system(poly.coords(), model.coords())?;
            form.add_component(mask, poly);
        }
        Ok(form)
    }

    pub fn model(&self) -> &RegularModel {
        &self.model
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> impl Iterator<Item = (&u32, &Polynomial)> {
        self.components.iter()
    }

    pub fn component(&self, mask: u32) -> Polynomial {
        self.components
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.model.coords()))
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

    pub fn checked_add(&self, other: &RegularFoliatedForm) -> Result<RegularFoliatedForm> {
        if self.degree != other.degree || self.model != other.model {
            return Err(Error::Invalid("form degree or model mismatch in +".into()));
        }
        let mut out = self.clone();
        for (&mask, poly) in &other.components {
            out.add_component(mask, poly.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &RegularFoliatedForm) -> Result<RegularFoliatedForm> {
        self.checked_add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> RegularFoliatedForm {
        let mut out = RegularFoliatedForm::zero(&self.model, self.degree);
        for (&mask, poly) in &self.components {
            out.add_component(mask, poly.scale(c));
        }
        out
    }

    /// Leafwise exterior derivative on the regular model.
    pub fn d_f(&self) -> RegularFoliatedForm {
        let n = self.model.n();
        let mut out = RegularFoliatedForm::zero(&self.model, self.degree + 1);
        for (&mask, poly) in &self.components {
            for j in 1..=n {
                let bit = 1u32 << (j - 1);
                if mask & bit != 0 {
                    continue;
                }
                let bigger = mask | bit;
                let applied = poly.partial(j - 1);
                if applied.is_zero() {
                    continue;
                }
                let pos = (bigger & (bit - 1)).count_ones() as usize + 1;
                let signed =
                    if pos % 2 == 1 { applied } else { applied.scale(&Scalar::from_int(-1)) };
                out.add_component(bigger, signed);
            }
        }
        out
    }

    /// Pullback along the leaf-collapsing end of the retraction: on
    /// 0-forms it substitutes 0 for the leaf coordinates; leaf
    /// differentials pull back to zero, so k >= 1 forms map to zero.
    pub fn phi0_pullback(&self) -> RegularFoliatedForm {
        if self.degree >= 1 {
            return RegularFoliatedForm::zero(&self.model, self.degree);
        }
        let leaf = self.model.leaf_slots();
        let mut out = RegularFoliatedForm::zero(&self.model, 0);
        if let Some(poly) = self.components.get(&0) {
            out.add_component(0, poly.restrict_to_zero(&leaf));
        }
        out
    }

    /// The homotopy operator: for a component monomial of leafwise degree
    /// l on a k-wedge, contraction with the radial leafwise field and the
    /// exact integral of the scaling pullback contribute the factor
    /// 1/(l + k) on each index of the wedge.
    pub fn homotopy_i(&self) -> Result<RegularFoliatedForm> {
        if self.degree == 0 {
            return Err(Error::ZeroDegreeHomotopy);
        }
        let k = self.degree as i64;
        let leaf = self.model.leaf_slots();
        let mut out = RegularFoliatedForm::zero(&self.model, self.degree - 1);
        for (&mask, poly) in &self.components {
            let indices = indices_from_mask(mask);
            for (m, c) in poly.terms() {
                let l = m.degree_on(&leaf) as i64;
                let factor = Scalar::ratio(1, l + k);
                for (a, &j) in indices.iter().enumerate() {
                    let sign = if a % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
                    let smaller = mask & !(1u32 << (j - 1));
                    let coeff = &(&sign * &factor) * c;
                    out.add_component(
                        smaller,
                        Polynomial::from_terms(
                            self.model.coords(),
                            [(m.times_var(j - 1), coeff)],
                        ),
                    );
                }
            }
        }
        Ok(out)
    }

    /// alpha - phi_0^*(alpha) - I(d alpha) - d(I alpha); identically zero.
    pub fn homotopy_identity_residual(&self) -> Result<RegularFoliatedForm> {
        let d_alpha = self.d_f();
        let i_d = d_alpha.homotopy_i()?;
        let mut residual = self.checked_sub(&self.phi0_pullback())?.checked_sub(&i_d)?;
        if self.degree >= 1 {
            residual = residual.checked_sub(&self.homotopy_i()?.d_f())?;
        }
        Ok(residual)
    }

    /// JSON encoding mirrors the singular form format, with the model
    /// header: {"m": 4, "n": 2, "k": 1, "components": {"1": "..."}}.
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
        serde_json::json!({
            "m": self.model.m(),
            "n": self.model.n(),
            "k": self.degree,
            "components": comps,
        })
    }

    pub fn from_json(value: &serde_json::Value, model: &RegularModel) -> Result<Self> {
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
            parts.push((indices, parse_polynomial(text, model.coords())?));
        }
        RegularFoliatedForm::new(model, k, parts)
    }
}

/// I(alpha) for closed alpha of degree >= 1 is an exact primitive:
/// d(I alpha) = alpha, since phi_0^* vanishes on positive degrees.
pub fn primitive_regular(alpha: &RegularFoliatedForm) -> Result<RegularFoliatedForm> {
    if alpha.degree() == 0 {
        return Err(Error::ZeroDegreeHomotopy);
    }
    let residual = alpha.d_f();
    if !residual.is_zero() {
        return Err(Error::NotClosed { residual: residual.to_json().to_string() });
    }
    alpha.homotopy_i()
}
