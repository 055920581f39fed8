use alloc::borrow::Cow;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::{Rational, Ring};
use crate::error::{Error, Result};

type Exponents = Vec<u32>;

/// Sparse multivariate polynomial with rational coefficients in named formal
/// parameters.
///
/// Exponent vectors are indexed by `vars`. Operands over different variable
/// lists are first lifted to the union of both lists (left operand's order
/// first), so constants built by [`Ring::zero`] and [`Ring::one`] mix freely
/// with parametric values.
#[derive(Clone)]
pub struct ParamPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Exponents, Rational>,
}

impl ParamPoly {
    pub fn new<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let vars: Arc<[String]> = vars.iter().map(|v| v.to_string()).collect();
        let mut map = BTreeMap::new();
        for (exp, coef) in terms {
            assert_eq!(exp.len(), vars.len(), "exponent vector length must match variables");
            accumulate(&mut map, exp, coef);
        }
        ParamPoly { vars, terms: map }
    }

    pub fn constant(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Vec::new(), q);
        }
        ParamPoly { vars: Arc::from(Vec::new()), terms }
    }

    /// The polynomial consisting of the single parameter `name`.
    pub fn variable(name: &str) -> Self {
        ParamPoly::new(&[name], [(vec![1], Rational::from(1))])
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a polynomial with no parametric terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (exp, coef) = self.terms.iter().next()?;
                exp.iter().all(|&e| e == 0).then(|| coef.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Evaluate at rational values. Only variables that actually occur need
    /// an assignment.
    pub fn substitute(&self, assignment: &[(&str, Rational)]) -> Result<Rational> {
        let mut values = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.iter().enumerate() {
            let used = self.terms.keys().any(|e| e[i] > 0);
            match assignment.iter().find(|(n, _)| *n == name.as_str()) {
                Some((_, q)) => values.push(q.clone()),
                None if !used => values.push(Rational::zero()),
                None => return Err(Error::MissingVariable(name.clone())),
            }
        }
        let mut acc = Rational::zero();
        for (exp, coef) in &self.terms {
            let mut term = coef.clone();
            for (v, &e) in values.iter().zip(exp) {
                if e > 0 {
                    term = term * v.pow(e);
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Substitute only the listed parameters, keeping the others symbolic.
    pub fn substitute_partial(&self, assignment: &[(&str, Rational)]) -> ParamPoly {
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|&i| !assignment.iter().any(|(n, _)| *n == self.vars[i].as_str()))
            .collect();
        let vars: Arc<[String]> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut terms = BTreeMap::new();
        for (exp, coef) in &self.terms {
            let mut c = coef.clone();
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 || keep.contains(&i) {
                    continue;
                }
                let (_, q) = assignment
                    .iter()
                    .find(|(n, _)| *n == self.vars[i].as_str())
                    .expect("assigned variable");
                c = c * q.pow(e);
            }
            let reduced: Exponents = keep.iter().map(|&i| exp[i]).collect();
            accumulate(&mut terms, reduced, c);
        }
        ParamPoly { vars, terms }
    }

    fn lift(&self, target: &Arc<[String]>) -> Cow<'_, BTreeMap<Exponents, Rational>> {
        if Arc::ptr_eq(&self.vars, target) || *self.vars == **target {
            return Cow::Borrowed(&self.terms);
        }
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v).expect("target contains all vars"))
            .collect();
        Cow::Owned(
            self.terms
                .iter()
                .map(|(exp, c)| {
                    let mut lifted = vec![0; target.len()];
                    for (&p, &e) in positions.iter().zip(exp) {
                        lifted[p] = e;
                    }
                    (lifted, c.clone())
                })
                .collect(),
        )
    }

    fn union_vars(&self, other: &ParamPoly) -> Arc<[String]> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            return self.vars.clone();
        }
        if other.vars.iter().all(|v| self.vars.contains(v)) {
            return self.vars.clone();
        }
        if self.vars.iter().all(|v| other.vars.contains(v)) {
            return other.vars.clone();
        }
        let mut merged: Vec<String> = self.vars.to_vec();
        for v in other.vars.iter() {
            if !merged.contains(v) {
                merged.push(v.clone());
            }
        }
        merged.into()
    }

    fn combine(&self, other: &ParamPoly, sign: bool) -> ParamPoly {
        let vars = self.union_vars(other);
        let mut terms = self.lift(&vars).into_owned();
        for (exp, coef) in other.lift(&vars).into_owned() {
            let coef = if sign { coef } else { -coef };
            accumulate(&mut terms, exp, coef);
        }
        ParamPoly { vars, terms }
    }

    fn product(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly { vars: self.union_vars(other), terms: BTreeMap::new() };
        out.accumulate_product(self, other);
        out
    }

    /// The constant value when there are no parametric terms.
    fn constant_ref(&self) -> Option<&Rational> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((exp, c)), None) if exp.iter().all(|&e| e == 0) => Some(c),
            _ => None,
        }
    }

    /// Re-indexes `self` so that its variables are `vars`, a superset.
    fn relabel(&mut self, vars: Arc<[String]>) {
        if Arc::ptr_eq(&self.vars, &vars) {
            return;
        }
        if *self.vars != *vars {
            self.terms = self.lift(&vars).into_owned();
        }
        self.vars = vars;
    }

    /// `self += a·b` in place.
    fn accumulate_product(&mut self, a: &ParamPoly, b: &ParamPoly) {
        if a.terms.is_empty() || b.terms.is_empty() {
            return;
        }
        let vars = self.union_vars(a);
        let vars = if b.vars.iter().all(|v| vars.contains(v)) {
            vars
        } else {
            ParamPoly { vars, terms: BTreeMap::new() }.union_vars(b)
        };
        self.relabel(vars.clone());
        if let Some(q) = b.constant_ref() {
            for (exp, c) in a.lift(&vars).iter() {
                accumulate(&mut self.terms, exp.clone(), c * q);
            }
            return;
        }
        if let Some(q) = a.constant_ref() {
            for (exp, c) in b.lift(&vars).iter() {
                accumulate(&mut self.terms, exp.clone(), q * c);
            }
            return;
        }
        let lhs = a.lift(&vars);
        let rhs = b.lift(&vars);
        for (ea, ca) in lhs.iter() {
            for (eb, cb) in rhs.iter() {
                let exp: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                accumulate(&mut self.terms, exp, ca * cb);
            }
        }
    }

    /// Terms ordered for display: higher total degree first, then
    /// descending exponents in variable order.
    fn display_order(&self) -> Vec<(&Exponents, &Rational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        terms
    }

    fn monomial_string(&self, exp: &[u32]) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (name, &e) in self.vars.iter().zip(exp) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(alloc::format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

fn accumulate(map: &mut BTreeMap<Exponents, Rational>, exp: Exponents, coef: Rational) {
    if coef.is_zero() {
        return;
    }
    match map.entry(exp) {
        alloc::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coef);
        }
        alloc::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get() + &coef;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

impl PartialEq for ParamPoly {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            return self.terms == other.terms;
        }
        let vars = self.union_vars(other);
        self.lift(&vars) == other.lift(&vars)
    }
}

impl Eq for ParamPoly {}

impl From<Rational> for ParamPoly {
    fn from(q: Rational) -> Self {
        ParamPoly::constant(q)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_terms(f, self.monomials())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        self.combine(rhs, true)
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        self.combine(rhs, false)
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        self.product(rhs)
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Ring for ParamPoly {
    fn zero() -> Self {
        ParamPoly::constant(Rational::zero())
    }

    fn one() -> Self {
        ParamPoly::constant(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        self.combine(other, true)
    }

    fn minus(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        self.combine(other, false)
    }

    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ParamPoly::zero();
        }
        self.product(other)
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.accumulate_product(a, b);
    }

    fn negated(&self) -> Self {
        -self
    }

    fn inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        c.recip().map(ParamPoly::constant)
    }

    fn from_rational(q: Rational) -> Self {
        ParamPoly::constant(q)
    }

    fn scaled(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect(),
        }
    }

    fn monomials(&self) -> Vec<(Rational, String)> {
        self.display_order()
            .into_iter()
            .map(|(exp, coef)| (coef.clone(), self.monomial_string(exp)))
            .collect()
    }
}
