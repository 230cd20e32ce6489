//! The Tutte polynomial `t(M,N;x,y,z)` of a perspective, computed five ways,
//! with coefficient and evaluation counts of reorientations and a report
//! cross-checking all of them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ground::ElementSet;
use crate::guard::SizeGuard;
use crate::matroid::MatroidPerspective;
use crate::orientation::{self, Theta};
use crate::oriented::OMPerspective;
use crate::poly::{Exponent, MultiPoly, Var};
use crate::scalar::Scalar;
use crate::subsets::{self, ext_act, int_act, p_set, q_set};
use crate::Rational;

/// Polynomials with exact rational coefficients.
pub type Poly = MultiPoly<Rational>;

fn exponent(x: usize, y: usize, z: usize, u: usize, v: usize) -> Exponent {
    [x, y, z, u, v].map(|k| k as u32)
}

fn shifted<T: Scalar>(v: Var, k: usize) -> MultiPoly<T> {
    (&MultiPoly::var(v) - &MultiPoly::one()).pow(k as u32)
}

/// `Σ_A (x-1)^{r(N)-r_N(A)} (y-1)^{|A|-r_M(A)} z^{r(M)-r(N)-(r_M(A)-r_N(A))}`.
pub fn tutte_rank_def<T: Scalar>(p: &MatroidPerspective, guard: SizeGuard) -> Result<MultiPoly<T>> {
    guard.check_enumeration(p.len())?;
    let (m, n) = (p.m(), p.n());
    let mut tally: BTreeMap<(usize, usize, usize), u64> = BTreeMap::new();
    for a in p.ground().full().subsets() {
        let key = (n.rank() - n.rank_of(a), a.len() - m.rank_of(a), subsets::rcd(p, a));
        *tally.entry(key).or_default() += 1;
    }
    let mut t = MultiPoly::zero();
    for ((i, j, k), count) in tally {
        let term = &(&shifted(Var::X, i) * &shifted(Var::Y, j)) * &MultiPoly::var(Var::Z).pow(k as u32);
        t = &t + &term.scale(&T::from_u64(count));
    }
    Ok(t)
}

/// `Σ_A (x/2)^{|O*(-_A N)|} (y/2)^{|O(-_A M)|}`, summed with the halves as
/// written. Fails unless the result has integer coefficients.
pub fn tutte_orientation_activity<T: Scalar>(p: &OMPerspective, guard: SizeGuard) -> Result<MultiPoly<T>> {
    guard.check_enumeration(p.len())?;
    let mut t = MultiPoly::zero();
    for a in p.ground().full().subsets() {
        let i = orientation::dual_active_after(p, a).len();
        let j = orientation::active_after(p, a).len();
        let half = T::inv_pow2((i + j) as u32)
            .ok_or_else(|| Error::Unsupported("the coefficient ring does not contain 1/2".into()))?;
        t.add_term(exponent(i, j, 0, 0, 0), half);
    }
    if !t.is_integral() {
        return Err(Error::IdentityFailure(format!(
            "orientation activity expansion has non-integer coefficients: {t:?}"
        )));
    }
    Ok(t)
}

/// `Σ_A x^{|Θ*_N(A)|} u^{|Θ̄*_N(A)|} y^{|Θ_M(A)|} v^{|Θ̄_M(A)|}`.
pub fn tutte_orientation_4var<T: Scalar>(p: &OMPerspective, guard: SizeGuard) -> Result<MultiPoly<T>> {
    guard.check_enumeration(p.len())?;
    let mut t = MultiPoly::zero();
    for th in thetas(p) {
        t.add_term(
            exponent(
                th.dual_active.len(),
                th.active.len(),
                0,
                th.dual_active_reoriented.len(),
                th.active_reoriented.len(),
            ),
            T::one(),
        );
    }
    Ok(t)
}

/// `Σ_B x^{|Int_N(B)|} y^{|Ext_M(B)|} z^{rcd(B)}` over `B` independent in `M`
/// and spanning in `N`.
pub fn tutte_subset_activity<T: Scalar>(p: &MatroidPerspective, guard: SizeGuard) -> Result<MultiPoly<T>> {
    guard.check_enumeration(p.len())?;
    let (m, n) = (p.m(), p.n());
    let mut t = MultiPoly::zero();
    for b in p.ground().full().subsets() {
        if m.is_independent(b) && n.is_spanning(b) {
            let e = exponent(int_act(n, b).len(), ext_act(m, b).len(), subsets::rcd(p, b), 0, 0);
            t.add_term(e, T::one());
        }
    }
    Ok(t)
}

/// `Σ_A x^{|Int_N(A)|} u^{|P_N(A)|} y^{|Ext_M(A)|} v^{|Q_M(A)|} z^{rcd(A)}`.
pub fn tutte_subset_5var<T: Scalar>(p: &MatroidPerspective, guard: SizeGuard) -> Result<MultiPoly<T>> {
    guard.check_enumeration(p.len())?;
    let (m, n) = (p.m(), p.n());
    let mut t = MultiPoly::zero();
    for a in p.ground().full().subsets() {
        let e = exponent(
            int_act(n, a).len(),
            ext_act(m, a).len(),
            subsets::rcd(p, a),
            p_set(n, a).len(),
            q_set(m, a).len(),
        );
        t.add_term(e, T::one());
    }
    Ok(t)
}

/// Refined activities of every reorientation, indexed by the bits of `A`.
fn thetas(p: &OMPerspective) -> Vec<Theta> {
    p.ground()
        .full()
        .subsets()
        .map(|a| orientation::theta(p, a).expect("subsets of the ground set"))
        .collect()
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `t(x, y, z)` at a rational point.
pub fn evaluate(t: &Poly, x: i64, y: i64, z: i64) -> Rational {
    t.eval(&[rat(x), rat(y), rat(z), rat(0), rat(0)])
}

fn at_z_one(t: &Poly) -> Poly {
    t.substitute(&[(Var::Z, Poly::one())])
}

fn expand_xu_yv(t: &Poly) -> Poly {
    t.substitute(&[
        (Var::X, &Poly::var(Var::X) + &Poly::var(Var::U)),
        (Var::Y, &Poly::var(Var::Y) + &Poly::var(Var::V)),
    ])
}

fn integer(r: &Rational) -> Result<BigInt> {
    r.is_integer()
        .then(|| r.to_integer())
        .ok_or_else(|| Error::IdentityFailure(format!("{r} is not an integer")))
}

/// The coefficient `t_{i,j}` of `x^i y^j` in `t(x,y,1)` beside the number of
/// activity classes with `ι = i`, `ε = j` and the number of active-fixed,
/// dual-active-fixed reorientations with those activities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientEntry {
    pub i: usize,
    pub j: usize,
    pub coefficient: BigInt,
    pub classes: u64,
    pub fixed: u64,
}

impl CoefficientEntry {
    pub fn holds(&self) -> bool {
        self.coefficient == BigInt::from(self.classes) && self.coefficient == BigInt::from(self.fixed)
    }
}

pub fn coefficient_table(p: &OMPerspective, guard: SizeGuard) -> Result<Vec<CoefficientEntry>> {
    let t = at_z_one(&tutte_rank_def::<Rational>(p.underlying(), guard)?);
    let classes = orientation::classify_reorientations(p, guard)?;
    let mut table: BTreeMap<(usize, usize), CoefficientEntry> = BTreeMap::new();
    for (e, c) in t.terms() {
        let (i, j) = (e[0] as usize, e[1] as usize);
        table.entry((i, j)).or_insert_with(|| blank(i, j)).coefficient = integer(c)?;
    }
    for class in &classes {
        table
            .entry((class.iota, class.epsilon))
            .or_insert_with(|| blank(class.iota, class.epsilon))
            .classes += 1;
    }
    for th in thetas(p) {
        if th.is_fixed() {
            let (i, j) = (th.dual_active.len(), th.active.len());
            table.entry((i, j)).or_insert_with(|| blank(i, j)).fixed += 1;
        }
    }
    Ok(table.into_values().rev().collect())
}

fn blank(i: usize, j: usize) -> CoefficientEntry {
    CoefficientEntry {
        i,
        j,
        coefficient: BigInt::zero(),
        classes: 0,
        fixed: 0,
    }
}

/// Conditions on a reorientation `-_A M → -_A N`, one per row of the census.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    Unconditioned,
    Acyclic,
    TotallyCyclic,
    AcyclicDualActiveFixed,
    ActiveFixedTotallyCyclic,
    ActiveFixed,
    DualActiveFixed,
    ActiveFixedDualActiveFixed,
    AcyclicTotallyCyclic,
}

impl Condition {
    pub const ALL: [Condition; 9] = [
        Condition::Unconditioned,
        Condition::Acyclic,
        Condition::TotallyCyclic,
        Condition::AcyclicDualActiveFixed,
        Condition::ActiveFixedTotallyCyclic,
        Condition::ActiveFixed,
        Condition::DualActiveFixed,
        Condition::ActiveFixedDualActiveFixed,
        Condition::AcyclicTotallyCyclic,
    ];

    /// `(x, y)` such that `t(x, y, 1)` counts the reorientations.
    pub fn point(self) -> (i64, i64) {
        match self {
            Condition::Unconditioned => (2, 2),
            Condition::Acyclic => (2, 0),
            Condition::TotallyCyclic => (0, 2),
            Condition::AcyclicDualActiveFixed => (1, 0),
            Condition::ActiveFixedTotallyCyclic => (0, 1),
            Condition::ActiveFixed => (2, 1),
            Condition::DualActiveFixed => (1, 2),
            Condition::ActiveFixedDualActiveFixed => (1, 1),
            Condition::AcyclicTotallyCyclic => (0, 0),
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Condition::Unconditioned => "no condition",
            Condition::Acyclic => "acyclic M",
            Condition::TotallyCyclic => "totally cyclic N",
            Condition::AcyclicDualActiveFixed => "acyclic M, dual-active-fixed N",
            Condition::ActiveFixedTotallyCyclic => "active-fixed M, totally cyclic N",
            Condition::ActiveFixed => "active-fixed M",
            Condition::DualActiveFixed => "dual-active-fixed N",
            Condition::ActiveFixedDualActiveFixed => "active-fixed M, dual-active-fixed N",
            Condition::AcyclicTotallyCyclic => "acyclic M, totally cyclic N",
        }
    }

    fn holds(self, th: &Theta) -> bool {
        let acyclic = (th.active | th.active_reoriented).is_empty();
        let totally_cyclic = (th.dual_active | th.dual_active_reoriented).is_empty();
        let active_fixed = th.active_reoriented.is_empty();
        let dual_active_fixed = th.dual_active_reoriented.is_empty();
        match self {
            Condition::Unconditioned => true,
            Condition::Acyclic => acyclic,
            Condition::TotallyCyclic => totally_cyclic,
            Condition::AcyclicDualActiveFixed => acyclic && dual_active_fixed,
            Condition::ActiveFixedTotallyCyclic => active_fixed && totally_cyclic,
            Condition::ActiveFixed => active_fixed,
            Condition::DualActiveFixed => dual_active_fixed,
            Condition::ActiveFixedDualActiveFixed => active_fixed && dual_active_fixed,
            Condition::AcyclicTotallyCyclic => acyclic && totally_cyclic,
        }
    }

    /// The condition on activity classes counted by the same evaluation,
    /// for the rows that have one.
    fn class_holds(self, iota: usize, epsilon: usize) -> Option<bool> {
        match self {
            Condition::AcyclicDualActiveFixed => Some(epsilon == 0),
            Condition::ActiveFixedTotallyCyclic => Some(iota == 0),
            Condition::ActiveFixedDualActiveFixed => Some(true),
            Condition::AcyclicTotallyCyclic => Some(iota == 0 && epsilon == 0),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub condition: Condition,
    /// Reorientations satisfying the condition.
    pub reorientations: u64,
    /// Activity classes satisfying the class version of the condition.
    pub classes: Option<u64>,
    /// `t(x, y, 1)` at the row's point.
    pub evaluation: BigInt,
}

impl CensusRow {
    pub fn holds(&self) -> bool {
        BigInt::from(self.reorientations) == self.evaluation
            && self.classes.is_none_or(|c| BigInt::from(c) == self.evaluation)
    }
}

pub fn reorientation_census(p: &OMPerspective, guard: SizeGuard) -> Result<Vec<CensusRow>> {
    let t = tutte_rank_def::<Rational>(p.underlying(), guard)?;
    let classes = orientation::classify_reorientations(p, guard)?;
    let thetas = thetas(p);
    Condition::ALL
        .iter()
        .map(|&condition| {
            let (x, y) = condition.point();
            let reorientations = thetas.iter().filter(|th| condition.holds(th)).count() as u64;
            let classes = condition.class_holds(0, 0).map(|_| {
                classes
                    .iter()
                    .filter(|c| condition.class_holds(c.iota, c.epsilon) == Some(true))
                    .count() as u64
            });
            Ok(CensusRow {
                condition,
                reorientations,
                classes,
                evaluation: integer(&evaluate(&t, x, y, 1))?,
            })
        })
        .collect()
}

/// One line of the verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub holds: bool,
    /// What went wrong: a polynomial difference, a subset, or an error.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    fn push(&mut self, name: &'static str, outcome: Result<Option<String>>) -> Result<()> {
        let (holds, detail) = match outcome {
            Ok(None) => (true, None),
            Ok(Some(d)) => (false, Some(d)),
            Err(e @ Error::SizeGuard { .. }) => return Err(e),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(Check { name, holds, detail });
        Ok(())
    }
}

fn same(lhs: &Poly, rhs: &Poly) -> Option<String> {
    (lhs != rhs).then(|| format!("left - right = {}", lhs - rhs))
}

fn first_failure(p: &OMPerspective, mut bad: impl FnMut(ElementSet) -> Result<bool>) -> Result<Option<String>> {
    for a in p.ground().full().subsets() {
        if bad(a)? {
            return Ok(Some(format!("A = {}", p.ground().fmt_set(a))));
        }
    }
    Ok(None)
}

fn monomial(x: usize, y: usize) -> Poly {
    Poly::monomial(exponent(x, y, 0, 0, 0), Rational::one())
}

fn factorial(k: usize) -> Rational {
    (1..=k as i64).map(rat).fold(Rational::one(), |a, b| a * b)
}

/// Runs every identity relating the five expansions, the evaluation and
/// coefficient counts, and the structural facts they rest on.
pub fn verify_identities(p: &OMPerspective, guard: SizeGuard) -> Result<Report> {
    guard.check_verification(p.len())?;
    let up = p.underlying();
    let (m, n) = (up.m(), up.n());
    let mut report = Report::default();

    let t = tutte_rank_def::<Rational>(up, guard)?;
    let t1 = at_z_one(&t);
    let th = thetas(p);
    let x = Poly::var(Var::X);
    let y = Poly::var(Var::Y);

    report.push(
        "(i) rank definition at z=1 = orientation activity expansion",
        tutte_orientation_activity::<Rational>(p, guard).map(|o| same(&t1, &o)),
    )?;
    let subset = tutte_subset_activity::<Rational>(up, guard)?;
    report.push("(ii) rank definition = subset activity expansion", Ok(same(&t, &subset)))?;
    report.push(
        "(iii) 4-variable orientation expansion = t(x+u, y+v, 1)",
        tutte_orientation_4var::<Rational>(p, guard).map(|o| same(&expand_xu_yv(&t1), &o)),
    )?;
    let five = tutte_subset_5var::<Rational>(up, guard)?;
    report.push("(iv) 5-variable subset expansion = t(x+u, y+v, z)", Ok(same(&expand_xu_yv(&t), &five)))?;
    let zero = Poly::zero();
    report.push(
        "5-variable expansion at (x, 0, y, 0, z) = subset activity expansion",
        Ok(same(&five.substitute(&[(Var::U, zero.clone()), (Var::V, zero)]), &subset)),
    )?;
    let one = Poly::one();
    let specialized = five.substitute(&[
        (Var::X, one.clone()),
        (Var::U, &x - &one),
        (Var::Y, one.clone()),
        (Var::V, &y - &one),
    ]);
    report.push("5-variable expansion at (1, x-1, 1, y-1, z) = rank definition", Ok(same(&specialized, &t)))?;

    let xm = &x - &one;
    let ym = &y - &one;
    let shifted_sum = th.iter().fold(Poly::zero(), |acc, th| {
        &acc + &(&xm.pow(th.dual_active.len() as u32) * &ym.pow(th.active.len() as u32))
    });
    report.push("t(x, y, 1) = sum of (x-1)^θ* (y-1)^θ", Ok(same(&t1, &shifted_sum)))?;
    let fixed_sum = th
        .iter()
        .filter(|th| th.is_fixed())
        .fold(Poly::zero(), |acc, th| &acc + &monomial(th.dual_active.len(), th.active.len()));
    report.push("t(x, y, 1) = sum over θ̄* = θ̄ = 0 of x^θ* y^θ", Ok(same(&t1, &fixed_sum)))?;
    let signed: i64 = th
        .iter()
        .map(|th| if (th.dual_active.len() + th.active.len()) % 2 == 0 { 1 } else { -1 })
        .sum();
    let t00 = evaluate(&t, 0, 0, 1);
    report.push(
        "t(0, 0, 1) = sum of (-1)^(θ* + θ)",
        Ok((t00 != rat(signed)).then(|| format!("t(0,0,1) = {t00}, sum = {signed}"))),
    )?;

    let mut derivative_failure = None;
    'pq: for dp in 0..=n.rank() {
        for dq in 0..=(p.len() - m.rank()) {
            let lhs = t1.derivative(Var::X, dp as u32).derivative(Var::Y, dq as u32);
            let rhs = th
                .iter()
                .filter(|th| th.dual_active_reoriented.len() == dp && th.active_reoriented.len() == dq)
                .fold(Poly::zero(), |acc, th| &acc + &monomial(th.dual_active.len(), th.active.len()))
                .scale(&(factorial(dp) * factorial(dq)));
            if let Some(d) = same(&lhs, &rhs) {
                derivative_failure = Some(format!("p = {dp}, q = {dq}: {d}"));
                break 'pq;
            }
        }
    }
    report.push(
        "d^(p+q)t/dx^p dy^q (x, y, 1) = p!q! sum over θ̄* = p, θ̄ = q of x^θ* y^θ, p <= r(N), q <= |E| - r(M)",
        Ok(derivative_failure),
    )?;
    let t201 = evaluate(&t, 2, 0, 1);
    let pow2 = |k: usize| rat(1 << k);
    let first: Rational = th
        .iter()
        .filter(|th| (th.dual_active_reoriented | th.active | th.active_reoriented).is_empty())
        .map(|th| pow2(th.dual_active.len()))
        .sum();
    let second: Rational = th
        .iter()
        .filter(|th| (th.dual_active | th.active | th.active_reoriented).is_empty())
        .map(|th| pow2(th.dual_active_reoriented.len()))
        .sum();
    report.push(
        "t(2, 0, 1) = sum over θ̄* = θ = θ̄ = 0 of 2^θ* = sum over θ* = θ = θ̄ = 0 of 2^θ̄*",
        Ok((t201 != first || t201 != second).then(|| format!("t(2,0,1) = {t201}, sums = {first}, {second}"))),
    )?;
    report.push(
        "duality: t(N*, M*; x, y, 1) = t(M, N; y, x, 1)",
        p.dual().and_then(|d| tutte_rank_def::<Rational>(d.underlying(), guard)).map(|td| {
            let swapped = t1.substitute(&[(Var::X, y.clone()), (Var::Y, x.clone())]);
            same(&at_z_one(&td), &swapped)
        }),
    )?;
    report.push(
        "duality: t(N*, M*; x, y, z) = z^(r(M) - r(N)) t(M, N; y, x, 1/z)",
        p.dual().and_then(|d| tutte_rank_def::<Rational>(d.underlying(), guard)).map(|td| {
            let mut reflected = Poly::zero();
            for (e, c) in t.terms() {
                let mut f = *e;
                f.swap(0, 1);
                f[2] = (m.rank() - n.rank()) as u32 - e[2];
                reflected.add_term(f, c.clone());
            }
            same(&td, &reflected)
        }),
    )?;

    report.push("activity classes: partition, sizes, unique fixed member", check_classes(p, guard))?;
    report.push(
        "active partition unchanged by reorienting unions of its parts",
        check_partition_invariance(p, guard),
    )?;
    report.push(
        "t_ij = classes with (ι, ε) = (i, j) = fixed reorientations with those activities",
        coefficient_table(p, guard).map(|table| {
            table
                .iter()
                .find(|e| !e.holds())
                .map(|e| format!("(i, j) = ({}, {}): t_ij = {}, classes = {}, fixed = {}", e.i, e.j, e.coefficient, e.classes, e.fixed))
        }),
    )?;
    report.push(
        "reorientation census matches Tutte evaluations",
        reorientation_census(p, guard).map(|rows| {
            rows.iter().find(|r| !r.holds()).map(|r| {
                format!(
                    "{}: {} reorientations, {:?} classes, evaluation {}",
                    r.condition.describe(),
                    r.reorientations,
                    r.classes,
                    r.evaluation
                )
            })
        }),
    )?;

    match subsets::dawson_partition(up) {
        Err(e) => report.push("interval partition of 2^E", Err(e))?,
        Ok(part) => {
            report.push("interval partition of 2^E", Ok(None))?;
            report.push(
                "rcd constant on every interval",
                first_failure(p, |a| {
                    let iv = part.iter().find(|iv| iv.contains(a)).expect("partition covers 2^E");
                    Ok(subsets::rcd(up, a) != iv.rcd)
                }),
            )?;
            report.push(
                "Int/P/Ext/Q relations inside every interval",
                first_failure(p, |a| Ok(subsets::locate_interval(up, &part, a).is_err())),
            )?;
        }
    }
    report.push(
        "|P(A)| = r - r(A) and |Q(A)| = |A| - r(A) in M and N",
        first_failure(p, |a| {
            Ok([m, n].iter().any(|mm| {
                p_set(mm, a).len() != mm.rank() - mm.rank_of(a) || q_set(mm, a).len() != a.len() - mm.rank_of(a)
            }))
        }),
    )?;
    Ok(report)
}

fn check_classes(p: &OMPerspective, guard: SizeGuard) -> Result<Option<String>> {
    let classes = orientation::classify_reorientations(p, guard)?;
    for class in &classes {
        if class.members.len() != 1 << (class.iota + class.epsilon) {
            return Ok(Some(format!(
                "class of {} has {} members",
                p.ground().fmt_set(class.representative),
                class.members.len()
            )));
        }
    }
    Ok(None)
}

/// For each class representative `A` and each union `U` of parts of its
/// active partition, hybrid part included, `A △ U` has the same partition.
/// Every reorientation is `A △ U'` for a representative `A`, so this covers
/// all of `2^E`.
fn check_partition_invariance(p: &OMPerspective, guard: SizeGuard) -> Result<Option<String>> {
    for class in orientation::classify_reorientations(p, guard)? {
        let a = class.representative;
        let part = orientation::partition_at(p, a)?;
        let parts: Vec<ElementSet> = part
            .flippable()
            .chain((!part.hybrid.is_empty()).then_some(part.hybrid))
            .collect();
        for pick in ElementSet::full(parts.len()).subsets() {
            let b = pick.iter().fold(a, |acc, i| acc ^ parts[i]);
            if orientation::partition_at(p, b)? != part {
                return Ok(Some(format!("A = {}", p.ground().fmt_set(b))));
            }
        }
    }
    Ok(None)
}
