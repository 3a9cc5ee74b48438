//! The twisted leafwise complex of a trivialized line bundle with a
//! leafwise-flat connection potential, at a finite truncation order, and
//! the construction of local flat sections.
//!
//! In the trivialization s, the connection reads nabla(s) = alpha (x) s
//! with d_F(alpha) = 0, and the twisted differential is
//! d_nabla(omega (x) s) = d_F(omega) (x) s + (-1)^deg omega ^ alpha (x) s.
//! Flat sections are r = e^(-f) s with d_F(f) = alpha, where f comes from
//! the regular homotopy operator; the exponential is carried truncated.

use crate::error::{Error, Result};
use crate::homotopy::{primitive_regular, RegularFoliatedForm, RegularModel};
use crate::polyring::Polynomial;
use crate::scalar::Scalar;

/// Polynomial truncated at a total degree: terms above the order are
/// discarded and equality means agreement modulo degree > order.
/// Differentiating costs one order; multiplying by a polynomial keeps it.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    poly: Polynomial,
    order: u32,
}

impl TruncatedSeries {
    pub fn new(poly: Polynomial, order: u32) -> Self {
        TruncatedSeries { poly: poly.truncate_above(order), order }
    }

    pub fn one(model: &RegularModel, order: u32) -> Self {
        TruncatedSeries { poly: Polynomial::one(model.coords()), order }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn truncate_to(&self, order: u32) -> Self {
        TruncatedSeries::new(self.poly.clone(), order.min(self.order))
    }

    pub fn checked_add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let order = self.order.min(other.order);
        Ok(TruncatedSeries::new(self.poly.checked_add(&other.poly)?, order))
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Result<TruncatedSeries> {
        Ok(TruncatedSeries::new(self.poly.checked_mul(p)?, self.order))
    }

    /// e^(-f) truncated at `order`; f must have no constant term (the
    /// exponential of a nonzero constant is not rational).
    pub fn exp_neg(f: &Polynomial, order: u32) -> Result<TruncatedSeries> {
        let constant = f.coefficient(&crate::polyring::Monomial::unit(f.coords().len()));
        if !constant.is_zero() {
            return Err(Error::NonzeroConstantTerm { constant: constant.to_string() });
        }
        let minus_f = f.scale(&Scalar::from_int(-1));
        let mut acc = Polynomial::one(f.coords());
        let mut sum = acc.clone();
        for j in 1..=order as i64 {
            acc = acc.checked_mul(&minus_f)?.truncate_above(order).scale(&Scalar::ratio(1, j));
            if acc.is_zero() {
                break;
            }
            sum = sum.checked_add(&acc)?;
        }
        Ok(TruncatedSeries::new(sum, order))
    }
}

/// Degree-1 potential of the connection in the fixed trivialization;
/// leafwise flatness d_F(alpha) = 0 is enforced at construction, as
/// forced by the vanishing of the twisted curvature along the leaves.
#[derive(Debug, Clone)]
pub struct ConnectionPotential {
    alpha: RegularFoliatedForm,
}

impl ConnectionPotential {
    pub fn new(alpha: RegularFoliatedForm) -> Result<Self> {
        if alpha.degree() != 1 {
            return Err(Error::Invalid("connection potential must be a 1-form".into()));
        }
        if !alpha.d_f().is_zero() {
            return Err(Error::NotLeafwiseFlat);
        }
        Ok(ConnectionPotential { alpha })
    }

    pub fn alpha(&self) -> &RegularFoliatedForm {
        &self.alpha
    }

    pub fn model(&self) -> &RegularModel {
        self.alpha.model()
    }
}

/// A k-form with values in the trivialized bundle: form (x) (u * s),
/// the coefficient u carried as a truncated series.
#[derive(Debug, Clone)]
pub struct TwistedForm {
    form: RegularFoliatedForm,
    coefficient: TruncatedSeries,
}

impl TwistedForm {
    pub fn new(form: RegularFoliatedForm, coefficient: TruncatedSeries) -> Result<Self> {
        crate::polyring::check_same_system(
            coefficient.poly().coords(),
            form.model().coords(),
        )?;
        Ok(TwistedForm { form, coefficient })
    }

    /// 0-form u * s.
    pub fn section(model: &RegularModel, coefficient: TruncatedSeries) -> Result<Self> {
        let mut form = RegularFoliatedForm::zero(model, 0);
        form.add_component(0, Polynomial::one(model.coords()));
        TwistedForm::new(form, coefficient)
    }

    pub fn form(&self) -> &RegularFoliatedForm {
        &self.form
    }

    pub fn coefficient(&self) -> &TruncatedSeries {
        &self.coefficient
    }

    pub fn order(&self) -> u32 {
        self.coefficient.order()
    }

    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero() || self.coefficient.is_zero()
    }

    /// Folds the coefficient into the form components, truncated at the
    /// series order.
    pub fn fold(&self) -> Result<RegularFoliatedForm> {
        let order = self.coefficient.order();
        let mut out = RegularFoliatedForm::zero(self.form.model(), self.form.degree());
        for (&mask, poly) in self.form.components() {
            out.add_component(
                mask,
                poly.checked_mul(self.coefficient.poly())?.truncate_above(order),
            );
        }
        Ok(out)
    }
}

/// omega ^ a for a k-form omega and 1-form a:
/// (omega ^ a)[J'] = (-1)^k sum_i (-1)^(i-1) a[j_i] omega[J' \ j_i].
fn wedge_with_one_form(
    omega: &RegularFoliatedForm,
    a: &RegularFoliatedForm,
) -> Result<RegularFoliatedForm> {
    if a.degree() != 1 {
        return Err(Error::Invalid("wedge partner must be a 1-form".into()));
    }
    let model = omega.model();
    let k = omega.degree();
    let n = model.n();
    let mut out = RegularFoliatedForm::zero(model, k + 1);
    for (&mask, poly) in omega.components() {
        for j in 1..=n {
            let bit = 1u32 << (j - 1);
            if mask & bit != 0 {
                continue;
            }
            let a_j = a.component(bit);
            if a_j.is_zero() {
                continue;
            }
            let bigger = mask | bit;
            let pos = (bigger & (bit - 1)).count_ones() as usize + 1;
            // (-1)^k from moving the 1-form past omega, (-1)^(pos-1) from
            // ordering the wedge indices
            let negative = (k + pos - 1) % 2 == 1;
            let term = poly.checked_mul(&a_j)?;
            out.add_component(bigger, if negative { term.scale(&Scalar::from_int(-1)) } else { term });
        }
    }
    Ok(out)
}

/// The twisted differential on the coefficient representation:
/// d_F(form * coefficient) + (-1)^deg (form * coefficient) ^ alpha.
/// Differentiation costs one order of reliability, so the output carries
/// order D - 1 with a unit coefficient.
pub fn d_nabla(eta: &TwistedForm, pot: &ConnectionPotential) -> Result<TwistedForm> {
    if eta.form().model() != pot.model() {
        return Err(Error::ModelMismatch);
    }
    let order = eta.order();
    let out_order = order.saturating_sub(1);
    let folded = eta.fold()?;
    let k = folded.degree();
    let d_part = folded.d_f();
    let wedge_part = wedge_with_one_form(&folded, pot.alpha())?;
    let total = if k % 2 == 0 { d_part.checked_add(&wedge_part)? } else { d_part.checked_sub(&wedge_part)? };
    // re-truncate at the reliable order
    let mut truncated = RegularFoliatedForm::zero(total.model(), total.degree());
    for (&mask, poly) in total.components() {
        truncated.add_component(mask, poly.truncate_above(out_order));
    }
    TwistedForm::new(truncated, TruncatedSeries::one(pot.model(), out_order))
}

/// The local flat section in the trivialization: f with d_F(f) = alpha
/// from the regular homotopy operator, then r = e^(-f) truncated at D.
/// nabla(r) = e^(-f) (alpha - d_F f) (x) s vanishes modulo the truncation.
pub fn flat_section(pot: &ConnectionPotential, order: u32) -> Result<TruncatedSeries> {
    let f = primitive_regular(pot.alpha())?;
    let f_poly = f.component(0);
    TruncatedSeries::exp_neg(&f_poly, order)
}

/// The leafwise potential primitive used by `flat_section`.
pub fn flat_section_exponent(pot: &ConnectionPotential) -> Result<Polynomial> {
    Ok(primitive_regular(pot.alpha())?.component(0))
}

/// d_nabla of the 0-form r*s: the residual 1-form of the flat-section
/// check, zero modulo the truncation.
pub fn nabla_section_residual(
    pot: &ConnectionPotential,
    section: &TruncatedSeries,
) -> Result<TwistedForm> {
    let eta = TwistedForm::section(pot.model(), section.clone())?;
    d_nabla(&eta, pot)
}

/// The same residual in plain polynomial arithmetic with no truncation:
/// components d_j(r) + r * alpha_j. Everything below the first dropped
/// series term survives here, so the support shows exactly which degrees
/// the truncation affects.
pub fn nabla_section_residual_exact(
    pot: &ConnectionPotential,
    section: &TruncatedSeries,
) -> Result<RegularFoliatedForm> {
    let model = pot.model();
    let r = section.poly();
    let mut out = RegularFoliatedForm::zero(model, 1);
    for j in 1..=model.n() {
        let a_j = pot.alpha().component(1u32 << (j - 1));
        let comp = r.partial(j - 1).checked_add(&r.checked_mul(&a_j)?)?;
        out.add_component(1u32 << (j - 1), comp);
    }
    Ok(out)
}
