//! Sparse multivariate polynomials over Q(i) with exact arithmetic.
//!
//! Monomials are exponent vectors ordered graded-lexicographically, so a
//! `BTreeMap` keyed by `Monomial` is automatically in canonical term
//! order and homogeneous slicing is cheap. Zero coefficients are never
//! stored; the zero polynomial is the empty term map.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::williamson::WilliamsonBasis;

/// A named list of coordinates. Symplectic systems pair them as
/// (x_1, y_1, ..., x_n, y_n); regular models use (p_1, ..., p_m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateSystem {
    names: Vec<String>,
}

impl CoordinateSystem {
    pub fn from_names<I, S>(names: I) -> Arc<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Arc::new(CoordinateSystem { names: names.into_iter().map(Into::into).collect() })
    }

    /// The 2n coordinates (x_1, y_1, ..., x_n, y_n) of n symplectic pairs.
    pub fn symplectic(n: usize) -> Arc<Self> {
        let mut names = Vec::with_capacity(2 * n);
        for i in 1..=n {
            names.push(format!("x{i}"));
            names.push(format!("y{i}"));
        }
        Arc::new(CoordinateSystem { names })
    }

    /// The m coordinates (p_1, ..., p_m) of a regular local model.
    pub fn cartesian(m: usize) -> Arc<Self> {
        Arc::new(CoordinateSystem { names: (1..=m).map(|i| format!("p{i}")).collect() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Number of symplectic pairs; only meaningful for even-length systems.
    pub fn pair_count(&self) -> usize {
        self.names.len() / 2
    }

    pub fn name(&self, slot: usize) -> &str {
        &self.names[slot]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Slot of x_i for a 1-based pair index.
    pub fn x_slot(i: usize) -> usize {
        2 * (i - 1)
    }

    /// Slot of y_i for a 1-based pair index.
    pub fn y_slot(i: usize) -> usize {
        2 * (i - 1) + 1
    }
}

pub(crate) fn same_system(a: &Arc<CoordinateSystem>, b: &Arc<CoordinateSystem>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_same_system(a: &Arc<CoordinateSystem>, b: &Arc<CoordinateSystem>) -> Result<()> {
    if same_system(a, b) {
        Ok(())
    } else {
        Err(Error::CoordinateMismatch {
            left: a.names.join(","),
            right: b.names.join(","),
        })
    }
}

/// Exponent vector of a monomial; one entry per coordinate slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial { exps }
    }

    pub fn variable(nvars: usize, slot: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[slot] = 1;
        Monomial { exps }
    }

    pub fn exponent(&self, slot: usize) -> u16 {
        self.exps[slot]
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Total degree restricted to the given slots.
    pub fn degree_on(&self, slots: &[usize]) -> u32 {
        slots.iter().map(|&s| self.exps[s] as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn times_var(&self, slot: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[slot] += 1;
        Monomial { exps }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then lexicographic on the
    /// exponent vector.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over Q(i) on a shared coordinate system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coords: Arc<CoordinateSystem>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(coords: &Arc<CoordinateSystem>) -> Self {
        Polynomial { coords: coords.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(coords: &Arc<CoordinateSystem>, c: Scalar) -> Self {
        let mut p = Polynomial::zero(coords);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(coords.len()), c);
        }
        p
    }

    pub fn one(coords: &Arc<CoordinateSystem>) -> Self {
        Polynomial::constant(coords, Scalar::one())
    }

    pub fn variable(coords: &Arc<CoordinateSystem>, slot: usize) -> Self {
        assert!(slot < coords.len(), "variable slot out of range");
        let mut p = Polynomial::zero(coords);
        p.terms.insert(Monomial::variable(coords.len(), slot), Scalar::one());
        p
    }

    pub fn from_terms<I>(coords: &Arc<CoordinateSystem>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Polynomial::zero(coords);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn coords(&self) -> &Arc<CoordinateSystem> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).min()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same_system(&self.coords, &other.coords)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same_system(&self.coords, &other.coords)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same_system(&self.coords, &other.coords)?;
        let mut out = Polynomial::zero(&self.coords);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.coords);
        }
        Polynomial {
            coords: self.coords.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Formal partial derivative with respect to the coordinate slot.
    pub fn partial(&self, slot: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.coords);
        for (m, c) in &self.terms {
            let e = m.exponent(slot);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[slot] -= 1;
            let factor = Scalar::new(
                BigRational::from_integer(BigInt::from(e)),
                BigRational::zero(),
            );
            out.add_term(Monomial::from_exponents(exps), c * &factor);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.coords);
        for _ in 0..e {
            out = out.checked_mul(self).expect("same system");
        }
        out
    }

    /// True when every coefficient lies in the real subfield.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    /// Splits into homogeneous parts, ascending in degree. The sum of the
    /// parts is the polynomial; the zero polynomial yields an empty list.
    pub fn homogeneous_parts(&self) -> Vec<(u32, Polynomial)> {
        let mut parts: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.total_degree())
                .or_insert_with(|| Polynomial::zero(&self.coords))
                .add_term(m.clone(), c.clone());
        }
        parts.into_iter().collect()
    }

    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        let mut out = Polynomial::zero(&self.coords);
        for (m, c) in &self.terms {
            if m.total_degree() == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Keeps only the terms whose monomial satisfies the predicate.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        let mut out = Polynomial::zero(&self.coords);
        for (m, c) in &self.terms {
            if keep(m) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Drops every term of total degree greater than `d`.
    pub fn truncate_above(&self, d: u32) -> Polynomial {
        self.filter_terms(|m| m.total_degree() <= d)
    }

    /// True when every term has positive total degree on the given slots,
    /// i.e. the polynomial vanishes on {slots = 0}.
    pub fn vanishes_on(&self, slots: &[usize]) -> bool {
        self.terms.keys().all(|m| m.degree_on(slots) > 0)
    }

    /// Substitutes 0 for the given slots: the restriction to {slots = 0}.
    pub fn restrict_to_zero(&self, slots: &[usize]) -> Polynomial {
        self.filter_terms(|m| m.degree_on(slots) == 0)
    }

    /// Composition: replaces the v-th variable by `images[v]`. All images
    /// must live on `target`; the result does too.
    pub fn substitute(
        &self,
        target: &Arc<CoordinateSystem>,
        images: &[Polynomial],
    ) -> Result<Polynomial> {
        if images.len() != self.coords.len() {
            return Err(Error::Invalid(format!(
                "substitution needs {} images, got {}",
                self.coords.len(),
                images.len()
            )));
        }
        for img in images {
            check_same_system(img.coords(), target)?;
        }
        // power cache per variable
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|img| vec![Polynomial::one(target), img.clone()]).collect();
        let power = |v: usize, e: u16, powers: &mut Vec<Vec<Polynomial>>| -> Polynomial {
            while powers[v].len() <= e as usize {
                let next = powers[v]
                    .last()
                    .unwrap()
                    .checked_mul(&images[v])
                    .expect("same system");
                powers[v].push(next);
            }
            powers[v][e as usize].clone()
        };
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.checked_mul(&power(v, e, &mut powers))?;
                }
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("coordinate-system mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("coordinate-system mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("coordinate-system mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Scalar::from_int(-1))
    }
}

/// Σ-vanishing test per the block structure of a Williamson basis: every
/// monomial must have positive total degree in the coordinates of the
/// block containing pair `i` (all four coordinates for a focus-focus
/// pair, whose two fields share the same vanishing set).
pub fn vanishes_on_sigma(p: &Polynomial, basis: &WilliamsonBasis, i: usize) -> Result<bool> {
    check_same_system(p.coords(), basis.coords())?;
    let slots = basis.sigma_slots(i)?;
    Ok(p.vanishes_on(&slots))
}

// ---------------------------------------------------------------------
// text format
// ---------------------------------------------------------------------

impl fmt::Display for Polynomial {
    /// Canonical text form: terms in descending graded-lex order, signed
    /// rational coefficients as `p/q`, Gaussian ones as `(p/q+r/s*I)`.
    /// `parse_polynomial` reads this back bit-exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono = fmt_monomial(m, &self.coords);
            let (sep, coeff) = if c.is_negative_real() {
                (if first { "-" } else { " - " }, (-c.clone()).to_string())
            } else {
                (if first { "" } else { " + " }, c.to_string())
            };
            write!(f, "{sep}")?;
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff}*{mono}")?;
            }
            first = false;
        }
        Ok(())
    }
}

fn fmt_monomial(m: &Monomial, coords: &CoordinateSystem) -> String {
    let mut parts = Vec::new();
    for (slot, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(coords.name(slot).to_string()),
            _ => parts.push(format!("{}^{}", coords.name(slot), e)),
        }
    }
    parts.join("*")
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer { bytes: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek_pos(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn next(&mut self) -> Result<(usize, Tok)> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.bytes.len() {
            return Ok((start, Tok::End));
        }
        let b = self.bytes[self.pos];
        let tok = match b {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let s = std::str::from_utf8(&self.bytes[self.pos..end]).unwrap();
                self.pos = end;
                Tok::Int(s.parse::<BigInt>().unwrap())
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let mut end = self.pos;
                while end < self.bytes.len()
                    && (self.bytes[end].is_ascii_alphanumeric() || self.bytes[end] == b'_')
                {
                    end += 1;
                }
                let s = std::str::from_utf8(&self.bytes[self.pos..end]).unwrap().to_string();
                self.pos = end;
                Tok::Ident(s)
            }
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{}`", b as char),
                })
            }
        };
        Ok((start, tok))
    }

    fn peek(&mut self) -> Result<Tok> {
        let save = self.pos;
        let (_, t) = self.next()?;
        self.pos = save;
        Ok(t)
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    coords: Arc<CoordinateSystem>,
}

impl<'a> Parser<'a> {
    fn err<T>(&mut self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.lex.peek_pos(), msg: msg.into() })
    }

    /// rational := INT ['/' INT]; the sign must already be consumed.
    fn rational_from(&mut self, numer: BigInt) -> Result<BigRational> {
        if self.lex.peek()? == Tok::Slash {
            self.lex.next()?;
            match self.lex.next()? {
                (_, Tok::Int(d)) => {
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    Ok(BigRational::new(numer, d))
                }
                (pos, t) => Err(Error::Parse { pos, msg: format!("expected denominator, got {t:?}") }),
            }
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    /// signed rational := ['+'|'-'] INT ['/' INT]
    fn signed_rational(&mut self) -> Result<BigRational> {
        let mut neg = false;
        loop {
            match self.lex.peek()? {
                Tok::Plus => {
                    self.lex.next()?;
                }
                Tok::Minus => {
                    self.lex.next()?;
                    neg = !neg;
                }
                _ => break,
            }
        }
        match self.lex.next()? {
            (_, Tok::Int(n)) => {
                let r = self.rational_from(n)?;
                Ok(if neg { -r } else { r })
            }
            (pos, t) => Err(Error::Parse { pos, msg: format!("expected number, got {t:?}") }),
        }
    }

    /// Gaussian literal after the opening paren: `a`, `(a+b*I)`, `(a-b*I)`,
    /// also accepting `(a+I)` and a leading imaginary part sign.
    fn gaussian(&mut self) -> Result<Scalar> {
        let re = self.signed_rational()?;
        let tok = self.lex.peek()?;
        let scalar = match tok {
            Tok::RParen => Scalar::new(re, BigRational::zero()),
            Tok::Plus | Tok::Minus => {
                let neg = tok == Tok::Minus;
                self.lex.next()?;
                let im = match self.lex.peek()? {
                    Tok::Ident(ref s) if s == "I" => {
                        self.lex.next()?;
                        BigRational::from_integer(BigInt::from(1))
                    }
                    _ => {
                        let mag = match self.lex.next()? {
                            (_, Tok::Int(n)) => self.rational_from(n)?,
                            (pos, t) => {
                                return Err(Error::Parse {
                                    pos,
                                    msg: format!("expected imaginary part, got {t:?}"),
                                })
                            }
                        };
                        match self.lex.next()? {
                            (_, Tok::Star) => {}
                            (pos, t) => {
                                return Err(Error::Parse {
                                    pos,
                                    msg: format!("expected `*I`, got {t:?}"),
                                })
                            }
                        }
                        match self.lex.next()? {
                            (_, Tok::Ident(ref s)) if s == "I" => {}
                            (pos, t) => {
                                return Err(Error::Parse {
                                    pos,
                                    msg: format!("expected `I`, got {t:?}"),
                                })
                            }
                        }
                        mag
                    }
                };
                Scalar::new(re, if neg { -im } else { im })
            }
            _ => return self.err("malformed Gaussian coefficient"),
        };
        match self.lex.next()? {
            (_, Tok::RParen) => Ok(scalar),
            (pos, t) => Err(Error::Parse { pos, msg: format!("expected `)`, got {t:?}") }),
        }
    }

    /// term := factor { ['*'] factor }; returns (coefficient, monomial).
    fn term(&mut self) -> Result<(Scalar, Monomial)> {
        let mut coeff = Scalar::one();
        let mut mono = Monomial::unit(self.coords.len());
        let mut any = false;
        loop {
            match self.lex.peek()? {
                Tok::Star => {
                    self.lex.next()?;
                    continue;
                }
                Tok::Int(_) => {
                    let n = match self.lex.next()? {
                        (_, Tok::Int(n)) => n,
                        _ => unreachable!(),
                    };
                    let r = self.rational_from(n)?;
                    coeff = coeff * Scalar::new(r, BigRational::zero());
                    any = true;
                }
                Tok::LParen => {
                    self.lex.next()?;
                    let g = self.gaussian()?;
                    coeff = coeff * g;
                    any = true;
                }
                Tok::Ident(name) => {
                    let (name_pos, _) = self.lex.next()?;
                    if name == "I" {
                        coeff = coeff * Scalar::i();
                    } else {
                        let slot = match self.coords.index_of(&name) {
                            Some(s) => s,
                            None => {
                                return Err(Error::Parse {
                                    pos: name_pos,
                                    msg: format!("unknown variable `{name}`"),
                                })
                            }
                        };
                        let mut e: u16 = 1;
                        if self.lex.peek()? == Tok::Caret {
                            self.lex.next()?;
                            match self.lex.next()? {
                                (_, Tok::Int(n)) => {
                                    e = n.to_string().parse::<u16>().map_err(|_| Error::Parse {
                                        pos: self.lex.pos,
                                        msg: "exponent too large".into(),
                                    })?;
                                }
                                (pos, t) => {
                                    return Err(Error::Parse {
                                        pos,
                                        msg: format!("expected exponent, got {t:?}"),
                                    })
                                }
                            }
                        }
                        let mut exps = mono.exponents().to_vec();
                        exps[slot] += e;
                        mono = Monomial::from_exponents(exps);
                    }
                    any = true;
                }
                _ => break,
            }
        }
        if !any {
            return self.err("expected a term");
        }
        Ok((coeff, mono))
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(&self.coords);
        let mut negate = false;
        // optional leading sign
        loop {
            match self.lex.peek()? {
                Tok::Plus => {
                    self.lex.next()?;
                }
                Tok::Minus => {
                    self.lex.next()?;
                    negate = !negate;
                }
                _ => break,
            }
        }
        loop {
            let (c, m) = self.term()?;
            out.add_term(m, if negate { -c } else { c });
            negate = false;
            match self.lex.peek()? {
                Tok::Plus => {
                    self.lex.next()?;
                }
                Tok::Minus => {
                    self.lex.next()?;
                    negate = true;
                }
                Tok::End => break,
                _ => return self.err("expected `+`, `-` or end of input"),
            }
        }
        Ok(out)
    }
}

/// Parses the whitespace-insensitive text format against a coordinate
/// system; round-trips bit-exactly with `Display`.
pub fn parse_polynomial(text: &str, coords: &Arc<CoordinateSystem>) -> Result<Polynomial> {
    let mut parser = Parser { lex: Lexer::new(text), coords: coords.clone() };
    parser.poly()
}
