//! Seeded random generators for the property suites and benchmarks.
//! Everything is deterministic given the seed.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decompose::{joint_kernel_projection, DeformationCochain};
use crate::foliated::{indices_from_mask, FoliatedKForm};
use crate::homotopy::{RegularFoliatedForm, RegularModel};
use crate::polyring::{CoordinateSystem, Monomial, Polynomial};
use crate::scalar::Scalar;
use crate::williamson::{BlockLabel, WilliamsonBasis};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn small_nonzero_rational(&mut self) -> Scalar {
        let num = loop {
            let n: i64 = self.rng.gen_range(-9..=9);
            if n != 0 {
                break n;
            }
        };
        let den: i64 = self.rng.gen_range(1..=4);
        Scalar::ratio(num, den)
    }

    pub fn scalar(&mut self, gaussian: bool) -> Scalar {
        let re = self.small_nonzero_rational();
        if gaussian && self.rng.gen_bool(0.5) {
            let im = self.small_nonzero_rational();
            re + &(Scalar::i() * im)
        } else {
            re
        }
    }

    fn monomial(&mut self, nvars: usize, max_degree: u32) -> Monomial {
        let d = self.rng.gen_range(0..=max_degree);
        let mut exps = vec![0u16; nvars];
        for _ in 0..d {
            let slot = self.rng.gen_range(0..nvars);
            exps[slot] += 1;
        }
        Monomial::from_exponents(exps)
    }

    /// Random sparse polynomial with small rational (optionally Gaussian)
    /// coefficients, total degree <= max_degree.
    pub fn polynomial(
        &mut self,
        coords: &Arc<CoordinateSystem>,
        max_degree: u32,
        max_terms: usize,
        gaussian: bool,
    ) -> Polynomial {
        let t = self.rng.gen_range(1..=max_terms.max(1));
        let mut p = Polynomial::zero(coords);
        for _ in 0..t {
            let m = self.monomial(coords.len(), max_degree);
            let c = self.scalar(gaussian);
            p.add_term(m, c);
        }
        p
    }

    /// Random polynomial annihilated by the first r basis fields.
    pub fn basic_polynomial(&mut self, basis: &WilliamsonBasis, r: usize, max_degree: u32) -> Polynomial {
        let p = self.polynomial(basis.coords(), max_degree, 6, false);
        joint_kernel_projection(basis, r, &p).expect("projection of a real polynomial")
    }

    /// Random well-defined foliated k-form: each component is filtered to
    /// the monomials vanishing on the singular sets of its subset.
    pub fn admissible_form(
        &mut self,
        basis: &Arc<WilliamsonBasis>,
        k: usize,
        max_degree: u32,
    ) -> FoliatedKForm {
        let n = basis.n();
        let mut form = FoliatedKForm::zero(basis, k);
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            if k > 0 && !self.rng.gen_bool(0.8) {
                continue;
            }
            let raw = self.polynomial(basis.coords(), max_degree, 6, false);
            let slot_sets: Vec<Vec<usize>> = indices_from_mask(mask)
                .iter()
                .map(|&j| basis.sigma_slots(j).expect("valid index"))
                .collect();
            let filtered = raw.filter_terms(|m| slot_sets.iter().all(|s| m.degree_on(s) > 0));
            form.add_component(mask, filtered);
        }
        form
    }

    /// Random closed admissible form, synthesized as a Lie-invariant part
    /// plus the differential of a random admissible (k-1)-form.
    pub fn closed_form(
        &mut self,
        basis: &Arc<WilliamsonBasis>,
        k: usize,
        max_degree: u32,
    ) -> FoliatedKForm {
        let n = basis.n();
        let mut invariant = FoliatedKForm::zero(basis, k);
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let raw = self.basic_polynomial(basis, n, max_degree);
            let slot_sets: Vec<Vec<usize>> = indices_from_mask(mask)
                .iter()
                .map(|&j| basis.sigma_slots(j).expect("valid index"))
                .collect();
            let filtered = raw.filter_terms(|m| slot_sets.iter().all(|s| m.degree_on(s) > 0));
            invariant.add_component(mask, filtered);
        }
        if k == 0 {
            return invariant;
        }
        let zeta = self.admissible_form(basis, k - 1, max_degree);
        invariant
            .checked_add(&zeta.d_f().expect("sampled forms are well defined"))
            .expect("degrees match")
    }

    /// Random cocycle of the deformation complex, synthesized as
    /// g_i = f_i + X_i(G) with basic f_i; always passes the cocycle test.
    pub fn cocycle(
        &mut self,
        basis: &Arc<WilliamsonBasis>,
        r: usize,
        max_degree: u32,
    ) -> (DeformationCochain, Vec<Polynomial>, Polynomial) {
        let potential = self.polynomial(basis.coords(), max_degree, 6, false);
        let mut components = Vec::new();
        let mut basics = Vec::new();
        for i in 1..=r {
            let f_i = self.basic_polynomial(basis, r, max_degree);
            let g_i = f_i
                .checked_add(&basis.apply_field(i, &potential).expect("valid index"))
                .expect("same system");
            components.push(g_i);
            basics.push(f_i);
        }
        let cochain = DeformationCochain::new(basis, components).expect("valid cochain");
        (cochain, basics, potential)
    }

    /// Random foliated form on the regular model.
    pub fn regular_form(
        &mut self,
        model: &RegularModel,
        k: usize,
        max_degree: u32,
    ) -> RegularFoliatedForm {
        let n = model.n();
        let mut parts = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let poly = self.polynomial(model.coords(), max_degree, 5, false);
            parts.push((indices_from_mask(mask), poly));
        }
        RegularFoliatedForm::new(model, k, parts).expect("valid shape")
    }
}

/// Canonical block lists for every Williamson type (k_e, k_h, k_f) with
/// n = k_e + k_h + 2 k_f up to n_max: elliptic blocks first, then
/// hyperbolic, then focus-focus pairs.
pub fn williamson_types_up_to(n_max: usize) -> Vec<Vec<BlockLabel>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k_f in 0..=(n / 2) {
            let rest = n - 2 * k_f;
            for k_e in (0..=rest).rev() {
                let k_h = rest - k_e;
                let mut labels = Vec::new();
                labels.extend(std::iter::repeat_n(BlockLabel::Elliptic, k_e));
                labels.extend(std::iter::repeat_n(BlockLabel::Hyperbolic, k_h));
                labels.extend(std::iter::repeat_n(BlockLabel::FocusFocus, k_f));
                out.push(labels);
            }
        }
    }
    out
}

/// The focus-focus-free types, for which the dimension oracle applies.
pub fn williamson_types_without_ff(n_max: usize) -> Vec<Vec<BlockLabel>> {
    williamson_types_up_to(n_max)
        .into_iter()
        .filter(|labels| !labels.contains(&BlockLabel::FocusFocus))
        .collect()
}
