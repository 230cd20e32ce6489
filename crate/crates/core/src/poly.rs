//! Sparse polynomials in the five variables `x, y, z, u, v`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
    U,
    V,
}

impl Var {
    /// Storage order of exponent vectors.
    pub const ALL: [Var; 5] = [Var::X, Var::Y, Var::Z, Var::U, Var::V];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::U => "u",
            Var::V => "v",
        }
    }
}

/// Exponents of `x, y, z, u, v`, in that order.
pub type Exponent = [u32; 5];

/// Within a monomial variables print as `x, u, y, v, z`.
const PRINT_ORDER: [Var; 5] = [Var::X, Var::U, Var::Y, Var::V, Var::Z];
/// Among monomials of equal total degree, higher powers of earlier variables
/// in this list come first.
const SORT_PRIORITY: [Var; 5] = [Var::Z, Var::X, Var::U, Var::Y, Var::V];

fn display_key(e: &Exponent) -> (std::cmp::Reverse<u32>, std::cmp::Reverse<[u32; 5]>) {
    let total = e.iter().sum();
    let lex = SORT_PRIORITY.map(|v| e[v.index()]);
    (std::cmp::Reverse(total), std::cmp::Reverse(lex))
}

/// A polynomial with no stored zero coefficients, so derived equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<T: Scalar> {
    terms: BTreeMap<Exponent, T>,
}

impl<T: Scalar> Default for MultiPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> MultiPoly<T> {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::monomial([0; 5], c)
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 5];
        e[v.index()] = 1;
        Self::monomial(e, T::one())
    }

    pub fn monomial(exp: Exponent, coef: T) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coef);
        p
    }

    pub fn add_term(&mut self, exp: Exponent, coef: T) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                *c = c.clone() + coef;
                if c.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coef);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &Exponent) -> T {
        self.terms.get(exp).cloned().unwrap_or_else(T::zero)
    }

    /// Terms in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &T)> {
        self.terms.iter()
    }

    /// Terms in display order: total degree descending, then by powers of
    /// `z, x, u, y, v` descending.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &T)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by_key(|(e, _)| display_key(e));
        t
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            out.add_term(*e, a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at `point`, given in the order `x, y, z, u, v`.
    pub fn eval(&self, point: &[T; 5]) -> T {
        self.terms.iter().fold(T::zero(), |acc, (e, c)| {
            let m = e
                .iter()
                .zip(point)
                .fold(c.clone(), |m, (&k, t)| m * num_traits::pow(t.clone(), k as usize));
            acc + m
        })
    }

    /// Simultaneous substitution; variables not in `map` stay put.
    pub fn substitute(&self, map: &[(Var, MultiPoly<T>)]) -> Self {
        let image = |v: Var| {
            map.iter()
                .find(|(w, _)| *w == v)
                .map(|(_, p)| p.clone())
                .unwrap_or_else(|| Self::var(v))
        };
        let images: Vec<Self> = Var::ALL.iter().map(|&v| image(v)).collect();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = &term * &images[i].pow(k);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// `k`-th formal partial derivative in `v`.
    pub fn derivative(&self, v: Var, k: u32) -> Self {
        let i = v.index();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] < k {
                continue;
            }
            let falling = (0..k).fold(1u64, |f, j| f * u64::from(e[i] - j));
            let mut d = *e;
            d[i] -= k;
            out.add_term(d, c.clone() * T::from_u64(falling));
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.to_integer().is_some())
    }
}

impl<T: Scalar> Add for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn add(self, rhs: &MultiPoly<T>) -> MultiPoly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn sub(self, rhs: &MultiPoly<T>) -> MultiPoly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, T::zero() - c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn mul(self, rhs: &MultiPoly<T>) -> MultiPoly<T> {
        let mut out = MultiPoly::zero();
        for (e, a) in &self.terms {
            for (f, b) in &rhs.terms {
                let mut g = *e;
                g.iter_mut().zip(f).for_each(|(x, y)| *x += y);
                out.add_term(g, a.clone() * b.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn neg(self) -> MultiPoly<T> {
        &MultiPoly::zero() - self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<T: Scalar> $tr for MultiPoly<T> {
            type Output = MultiPoly<T>;
            fn $f(self, rhs: MultiPoly<T>) -> MultiPoly<T> {
                (&self).$f(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponent) -> fmt::Result {
    let mut first = true;
    for v in PRINT_ORDER {
        let k = e[v.index()];
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(v.name())?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl<T: Field> fmt::Display for MultiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let constant = e.iter().all(|&k| k == 0);
            if constant {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

struct Term<'a, T>(&'a Exponent, &'a T);

struct Exp<'a>(&'a Exponent);

impl Serialize for Exp<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("exp", 5)?;
        st.serialize_field("x", &self.0[0])?;
        st.serialize_field("y", &self.0[1])?;
        st.serialize_field("z", &self.0[2])?;
        st.serialize_field("u", &self.0[3])?;
        st.serialize_field("v", &self.0[4])?;
        st.end()
    }
}

impl<T: Scalar> Serialize for Term<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("term", 2)?;
        st.serialize_field("exp", &Exp(self.0))?;
        st.serialize_field("coef", &self.1.to_string())?;
        st.end()
    }
}

/// A list of `{"exp":{"x":..,"y":..,"z":..,"u":..,"v":..},"coef":"p/q"}` in
/// display order.
impl<T: Scalar> Serialize for MultiPoly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.sorted_terms();
        let mut seq = s.serialize_seq(Some(terms.len()))?;
        for (e, c) in terms {
            seq.serialize_element(&Term(e, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    type P = MultiPoly<Rational>;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn x() -> P {
        P::var(Var::X)
    }
    fn y() -> P {
        P::var(Var::Y)
    }
    fn z() -> P {
        P::var(Var::Z)
    }
    fn u() -> P {
        P::var(Var::U)
    }
    fn v() -> P {
        P::var(Var::V)
    }

    fn persp1() -> P {
        &(&(&(&x() * &z()) + &z()) + &x()) + &(&y() + &P::one())
    }

    #[test]
    fn display_order() {
        assert_eq!(persp1().to_string(), "x*z + z + x + y + 1");
        let tri = &(&x().pow(2) + &x()) + &y();
        assert_eq!(tri.to_string(), "x^2 + x + y");
        let two = P::constant(r(2));
        let four = &(&(&two * &x()) + &(&two * &u())) + &(&(&y() + &v()) + &two);
        assert_eq!(four.to_string(), "2*x + 2*u + y + v + 2");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!((&P::zero() - &x()).to_string(), "-x");
        let half = P::constant(Rational::new(1.into(), 2.into()));
        assert_eq!((&(&half * &y()) - &P::one()).to_string(), "1/2*y - 1");
    }

    #[test]
    fn eval_examples() {
        let tri = &(&x().pow(2) + &x()) + &y();
        assert_eq!(tri.eval(&[r(2), r(0), r(7), r(7), r(7)]), r(6));
        assert_eq!(tri.eval(&[r(0), r(2), r(7), r(7), r(7)]), r(2));
        assert_eq!(P::zero().eval(&[r(1), r(2), r(3), r(4), r(5)]), r(0));
    }

    #[test]
    fn substitute_examples() {
        let sq = x().pow(2).substitute(&[(Var::X, &x() + &u())]);
        assert_eq!(sq.to_string(), "x^2 + 2*x*u + u^2");
        let at_one = persp1().substitute(&[(Var::Z, P::one())]);
        assert_eq!(at_one.to_string(), "2*x + y + 2");
        let ident = persp1().substitute(&[(Var::X, x()), (Var::Y, y())]);
        assert_eq!(ident, persp1());
        let five = persp1().substitute(&[(Var::X, &x() + &u()), (Var::Y, &y() + &v())]);
        assert_eq!(five.to_string(), "x*z + u*z + z + x + u + y + v + 1");
    }

    #[test]
    fn simultaneous_substitution() {
        let swapped = (&x() - &y()).substitute(&[(Var::X, y()), (Var::Y, x())]);
        assert_eq!(swapped, &y() - &x());
    }

    #[test]
    fn derivatives() {
        let p = &x().pow(3) + &(&x() * &y());
        assert_eq!(p.derivative(Var::X, 1).to_string(), "3*x^2 + y");
        assert_eq!(p.derivative(Var::X, 2).to_string(), "6*x");
        assert_eq!(p.derivative(Var::X, 4), P::zero());
        assert_eq!(p.derivative(Var::Y, 0), p);
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_string(&(&x() + &P::constant(Rational::new(1.into(), 2.into())))).unwrap();
        assert_eq!(
            j,
            r#"[{"exp":{"x":1,"y":0,"z":0,"u":0,"v":0},"coef":"1"},{"exp":{"x":0,"y":0,"z":0,"u":0,"v":0},"coef":"1/2"}]"#
        );
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((prop::array::uniform5(0u32..3), -3i64..4), 0..6).prop_map(|ts| {
            let mut p = P::zero();
            for (e, c) in ts {
                p.add_term(e, r(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_is_a_homomorphism(a in arb_poly(), b in arb_poly(), pt in prop::array::uniform5(-3i64..4)) {
            let pt = pt.map(r);
            prop_assert_eq!((&a * &b).eval(&pt), a.eval(&pt) * b.eval(&pt));
            prop_assert_eq!((&a + &b).eval(&pt), a.eval(&pt) + b.eval(&pt));
        }

        #[test]
        fn substitution_then_eval(a in arb_poly(), pt in prop::array::uniform5(-3i64..4)) {
            let pt = pt.map(r);
            let shifted = a.substitute(&[(Var::X, &x() + &u())]);
            let mut moved = pt.clone();
            moved[0] = pt[0].clone() + pt[3].clone();
            prop_assert_eq!(shifted.eval(&pt), a.eval(&moved));
        }
    }
}
