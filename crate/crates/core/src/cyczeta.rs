//! Zeta functions as finite products of linear cyclotomic factors
//! ∏_θ (1 − e^{2πiθ} t)^{r_θ} with exact rational angles θ ∈ [0,1).
//!
//! The linear-factor map is the canonical carrier: it is closed under
//! multiplication, inversion, and per-element age shifts (which leave
//! binomial form), and map equality decides value equality. Binomial
//! grouping (1 − e^{2πic} t^m)^s exists only for display and reporting.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::intlin::exact_div;
use crate::symgroup::{GroupElement, Subgroup};

/// ∏_θ (1 − e^{2πiθ} t)^{r_θ}: finite map from canonical angles in [0,1)
/// to nonzero integer exponents. The empty map is the constant 1.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CyclotomicProduct {
    factors: BTreeMap<BigRational, BigInt>,
}

fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

impl CyclotomicProduct {
    /// The empty product, i.e. the constant 1.
    pub fn one() -> CyclotomicProduct {
        CyclotomicProduct::default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// (1 − t^m)^s: adds s to every angle j/m, j = 0,…,m−1.
    pub fn binomial(m: &BigInt, s: &BigInt) -> CyclotomicProduct {
        assert!(m.is_positive(), "binomial needs m ≥ 1, got {m}");
        let mut out = CyclotomicProduct::one();
        if s.is_zero() {
            return out;
        }
        let mut j = BigInt::zero();
        while &j < m {
            out.add_factor(&BigRational::new(j.clone(), m.clone()), s);
            j += 1;
        }
        out
    }

    /// The angle → exponent map (no zero exponents, angles in [0,1)).
    pub fn factors(&self) -> &BTreeMap<BigRational, BigInt> {
        &self.factors
    }

    fn add_factor(&mut self, theta: &BigRational, r: &BigInt) {
        let key = frac(theta);
        let entry = self.factors.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += r;
        if entry.is_zero() {
            self.factors.remove(&key);
        }
    }

    pub fn multiply(&self, other: &CyclotomicProduct) -> CyclotomicProduct {
        let mut out = self.clone();
        out.multiply_in_place(other);
        out
    }

    pub fn multiply_in_place(&mut self, other: &CyclotomicProduct) {
        for (theta, r) in &other.factors {
            self.add_factor(theta, r);
        }
    }

    pub fn invert(&self) -> CyclotomicProduct {
        CyclotomicProduct {
            factors: self.factors.iter().map(|(t, r)| (t.clone(), -r)).collect(),
        }
    }

    /// Σ_θ r_θ — the degree as a rational function of t; equals the Euler
    /// characteristic for monodromy zeta functions.
    pub fn degree(&self) -> BigInt {
        self.factors.values().sum()
    }

    /// Multiply every root by e^{2πi·angle}: θ ↦ θ − angle (mod 1).
    pub fn shift(&self, angle: &BigRational) -> CyclotomicProduct {
        let mut out = CyclotomicProduct::one();
        for (theta, r) in &self.factors {
            out.add_factor(&(theta - angle), r);
        }
        out
    }

    /// The g-shift: roots multiplied by e^{2πi·age(g)}.
    pub fn age_shift(&self, g: &GroupElement) -> CyclotomicProduct {
        self.shift(&g.age())
    }

    /// Regroup into (1 − e^{2πic} t^m)^s terms, largest m first, ties broken
    /// by smallest c. Products of plain binomials (1 − t^m)^s are recognized
    /// exactly — including cancelled factors, so (1−t³)(1−t)^{-1} displays
    /// as such even though its factor map is 1 + t + t². Anything else falls
    /// back to greedy extraction of sign-pure equally-spaced orbits.
    /// Presentation only — the expansion reproduces `self` exactly.
    pub fn to_binomial_form(&self) -> BinomialForm {
        let mut terms = self.pure_binomial_terms().unwrap_or_else(|| self.orbit_terms());
        terms.sort_by(|a, b| {
            b.s.is_positive()
                .cmp(&a.s.is_positive())
                .then_with(|| b.m.cmp(&a.m))
                .then_with(|| a.c.cmp(&b.c))
        });
        BinomialForm { terms }
    }

    /// Try to write the map as ∏ (1 − t^m)^{s_m}: peel the largest
    /// denominator q — all φ(q) primitive angles must carry one common
    /// exponent — and divide out binomial(q, r) until nothing remains.
    fn pure_binomial_terms(&self) -> Option<Vec<BinomialTerm>> {
        let mut work = self.factors.clone();
        let mut terms = Vec::new();
        while let Some(q) = work.keys().map(|theta| theta.denom().clone()).max() {
            let prims: Vec<BigRational> =
                work.keys().filter(|theta| *theta.denom() == q).cloned().collect();
            if BigInt::from(prims.len()) != euler_phi(&q)? {
                return None;
            }
            let r = work[&prims[0]].clone();
            if prims.iter().any(|theta| work[theta] != r) {
                return None;
            }
            let peel = CyclotomicProduct::binomial(&q, &r);
            for (theta, e) in peel.factors {
                match work.entry(theta) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= e;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-e);
                    }
                }
            }
            terms.push(BinomialTerm { m: q, c: BigRational::zero(), s: r });
        }
        Some(terms)
    }

    fn orbit_terms(&self) -> Vec<BinomialTerm> {
        let mut work = self.factors.clone();
        let mut terms = Vec::new();
        while !work.is_empty() {
            let (m, c, orbit) = largest_orbit(&work);
            let s = orbit
                .iter()
                .map(|theta| work[theta].clone())
                .min_by_key(|r| r.abs())
                .expect("orbit is nonempty");
            for theta in &orbit {
                let entry = work.get_mut(theta).expect("orbit member present");
                *entry -= &s;
                if entry.is_zero() {
                    work.remove(theta);
                }
            }
            terms.push(BinomialTerm { m: BigInt::from(m), c, s });
        }
        terms
    }
}

/// Euler's totient of q ≥ 1 by trial-division factorization (None only if
/// q exceeds machine range, which zeta denominators never do).
fn euler_phi(q: &BigInt) -> Option<BigInt> {
    let mut q = q.to_u64()?;
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            let mut pk = 1;
            while q % p == 0 {
                q /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += 1;
    }
    if q > 1 {
        phi *= q - 1;
    }
    Some(BigInt::from(phi))
}

/// The largest complete equally-spaced sign-pure orbit in `work`:
/// m angles (c + j)/m, all present with exponents of one sign.
fn largest_orbit(
    work: &BTreeMap<BigRational, BigInt>,
) -> (usize, BigRational, Vec<BigRational>) {
    for m in (1..=work.len()).rev() {
        let m_big = BigInt::from(m);
        let offsets: BTreeSet<BigRational> =
            work.keys().map(|theta| frac(&(theta * BigRational::from(m_big.clone())))).collect();
        'offsets: for c in offsets {
            let mut orbit = Vec::with_capacity(m);
            let mut sign = 0i8;
            for j in 0..m {
                let theta = frac(&BigRational::new(
                    c.numer() + c.denom() * BigInt::from(j),
                    c.denom() * &m_big,
                ));
                let Some(r) = work.get(&theta) else { continue 'offsets };
                let this_sign = if r.is_positive() { 1 } else { -1 };
                if sign == 0 {
                    sign = this_sign;
                } else if sign != this_sign {
                    continue 'offsets;
                }
                orbit.push(theta);
            }
            return (m, c, orbit);
        }
    }
    unreachable!("m = 1 orbits always exist for a nonempty map");
}

impl std::fmt::Display for CyclotomicProduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_binomial_form())
    }
}

/// One display factor (1 − e^{2πic} t^m)^s; c = 0 renders as (1−t^m)^s.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinomialTerm {
    pub m: BigInt,
    pub c: BigRational,
    pub s: BigInt,
}

impl std::fmt::Display for BinomialTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let root = if self.c.is_zero() { String::new() } else { format!("e({})*", self.c) };
        let power = if self.m.is_one() { String::new() } else { format!("^{}", self.m) };
        write!(f, "(1-{root}t{power})^{}", self.s)
    }
}

/// Product of binomial display terms, in canonical order: positive
/// exponents first, then m descending, then c ascending.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinomialForm {
    terms: Vec<BinomialTerm>,
}

impl BinomialForm {
    pub fn terms(&self) -> &[BinomialTerm] {
        &self.terms
    }

    /// Expand back into linear factors (must reproduce the source exactly).
    pub fn expand(&self) -> CyclotomicProduct {
        let mut out = CyclotomicProduct::one();
        for term in &self.terms {
            let mut j = BigInt::zero();
            while j < term.m {
                let theta = BigRational::new(
                    term.c.numer() + term.c.denom() * &j,
                    term.c.denom() * &term.m,
                );
                out.add_factor(&theta, &term.s);
                j += 1;
            }
        }
        out
    }
}

impl std::fmt::Display for BinomialForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Closed form of ∏_{g ∈ H} (1 − t^m)_g (each factor age-shifted by g):
/// equals (1 − t^{lcm(m,k)})^{m·|H|/lcm(m,k)} with k = |H| / |H ∩ SL|.
pub fn aggregate_shifted_binomial(m: &BigInt, h: &Subgroup) -> Result<CyclotomicProduct> {
    let order = h.order();
    let sl_order = h.sl_intersection().order();
    let k = exact_div(&order, &sl_order, "SL index in aggregation")?;
    let ell = m.lcm(&k);
    let exponent = exact_div(&(m * &order), &ell, "aggregated binomial exponent")?;
    Ok(CyclotomicProduct::binomial(&ell, &exponent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invpoly::InvertiblePolynomial;
    use crate::symgroup::{Ambient, AmbientTag};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn bin(m: i64, s: i64) -> CyclotomicProduct {
        CyclotomicProduct::binomial(&BigInt::from(m), &BigInt::from(s))
    }

    #[test]
    fn binomial_places_all_roots_of_unity() {
        let b = bin(1, 1);
        assert_eq!(b.factors().len(), 1);
        assert_eq!(b.factors()[&rat(0, 1)], BigInt::one());

        let b = bin(3, 1);
        let angles: Vec<BigRational> = b.factors().keys().cloned().collect();
        assert_eq!(angles, vec![rat(0, 1), rat(1, 3), rat(2, 3)]);
        assert!(b.factors().values().all(|r| r.is_one()));

        assert!(bin(2, -2).multiply(&bin(2, 2)).is_one());
        assert!(bin(5, 0).is_one());
    }

    #[test]
    fn multiplication_is_a_group_operation() {
        let a = bin(3, 1).multiply(&bin(1, -1));
        assert_eq!(a.multiply(&CyclotomicProduct::one()), a);
        assert_eq!(a.invert().invert(), a);
        assert!(a.multiply(&a.invert()).is_one());
        let b = bin(2, 5);
        assert_eq!(a.multiply(&b), b.multiply(&a));
    }

    #[test]
    fn degree_is_additive() {
        assert_eq!(CyclotomicProduct::one().degree(), BigInt::zero());
        assert_eq!(bin(3, 1).degree(), BigInt::from(3));
        assert_eq!(bin(3, 1).multiply(&bin(1, -1)).degree(), BigInt::from(2));
        let a = bin(6, -2);
        let b = bin(4, 3);
        assert_eq!(a.multiply(&b).degree(), a.degree() + b.degree());
        assert_eq!(a.invert().degree(), -a.degree());
        // Free-action shape: binomial(m,s) has degree m·s.
        assert_eq!(bin(7, -3).degree(), BigInt::from(-21));
    }

    #[test]
    fn shift_moves_angles_against_the_age() {
        // (1−t) shifted by 1/3 becomes the single angle 2/3.
        let shifted = bin(1, 1).shift(&rat(1, 3));
        assert_eq!(shifted.factors().len(), 1);
        assert_eq!(shifted.factors()[&rat(2, 3)], BigInt::one());

        // Composition of shifts adds the angles.
        let a = bin(4, 2);
        assert_eq!(a.shift(&rat(1, 3)).shift(&rat(1, 2)), a.shift(&rat(5, 6)));
        // Integral shifts are the identity; degree is preserved.
        assert_eq!(a.shift(&rat(2, 1)), a);
        assert_eq!(a.shift(&rat(7, 5)).degree(), a.degree());
    }

    #[test]
    fn age_shift_uses_the_element_age() {
        let p = InvertiblePolynomial::parse("x^2*y + y^3").unwrap().0;
        let a = Ambient::new(&p, AmbientTag::Source);
        let g = a
            .element(&crate::intlin::RationalVector::new(vec![rat(1, 3), rat(1, 3)]))
            .unwrap();
        assert_eq!(bin(1, 1).age_shift(&g), bin(1, 1).shift(&rat(2, 3)));
        assert_eq!(bin(6, 1).age_shift(&a.identity()), bin(6, 1));
    }

    #[test]
    fn aggregation_closed_form_matches_brute_force() {
        let polys = ["x^3", "x^2*y + y^3", "x^2 + y^2", "x^2 + x*y^3", "x^3 + y^2*x"];
        for text in polys {
            let p = InvertiblePolynomial::parse(text).unwrap().0;
            for tag in [AmbientTag::Source, AmbientTag::Transpose] {
                let ambient = Ambient::new(&p, tag);
                for h in ambient.all_subgroups(1000).unwrap() {
                    for m in 1..=6i64 {
                        let m_big = BigInt::from(m);
                        let closed = aggregate_shifted_binomial(&m_big, &h).unwrap();
                        let mut brute = CyclotomicProduct::one();
                        for g in h.enumerate(1000).unwrap() {
                            brute.multiply_in_place(&bin(m, 1).age_shift(&g));
                        }
                        assert_eq!(closed, brute, "{text} {tag:?} m={m} |H|={}", h.order());
                    }
                }
            }
        }
    }

    #[test]
    fn aggregation_examples() {
        // k = 1 (every age integral): (1−t^m)^{|H|}.
        let p = InvertiblePolynomial::parse("x^2 + y^2").unwrap().0;
        let a = Ambient::new(&p, AmbientTag::Source);
        let sl = a.full_group().sl_intersection();
        assert_eq!(sl.order(), BigInt::from(2));
        assert_eq!(
            aggregate_shifted_binomial(&BigInt::from(3), &sl).unwrap(),
            bin(3, 2)
        );

        // m=1, |H|=3, k=3 → (1−t³)¹.
        let p = InvertiblePolynomial::parse("x^2*y + y^3").unwrap().0;
        let a = Ambient::new(&p, AmbientTag::Source);
        let g0 = a.monodromy_subgroup();
        assert_eq!(
            aggregate_shifted_binomial(&BigInt::one(), &g0).unwrap(),
            bin(3, 1)
        );

        // m=2, |H|=6, k=3 → (1−t⁶)²: the transpose-side full group has
        // SL intersection {(0,0),(1/2,1/2)} of order 2, so k = 3.
        let tr = Ambient::new(&p, AmbientTag::Transpose);
        let full = tr.full_group();
        assert_eq!(full.order(), BigInt::from(6));
        assert_eq!(
            exact_div(&full.order(), &full.sl_intersection().order(), "k").unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            aggregate_shifted_binomial(&BigInt::from(2), &full).unwrap(),
            bin(6, 2)
        );
    }

    #[test]
    fn binomial_form_groups_greedily() {
        let form = bin(3, 1).to_binomial_form();
        assert_eq!(form.terms().len(), 1);
        assert_eq!(form.terms()[0], BinomialTerm {
            m: BigInt::from(3),
            c: BigRational::zero(),
            s: BigInt::one(),
        });

        // {0 ↦ −2, 1/3 ↦ −1, 2/3 ↦ −1} regroups as (1−t³)^{−1}(1−t)^{−1}.
        let a = bin(3, -1).multiply(&bin(1, -1));
        let form = a.to_binomial_form();
        assert_eq!(form.to_string(), "(1-t^3)^-1 * (1-t)^-1");
        assert_eq!(form.expand(), a);
    }

    #[test]
    fn binomial_form_orders_positive_before_negative() {
        let a = bin(3, 1).multiply(&bin(1, -1));
        assert_eq!(a.to_string(), "(1-t^3)^1 * (1-t)^-1");
        let b = bin(1, 1).multiply(&bin(3, -1));
        assert_eq!(b.to_string(), "(1-t)^1 * (1-t^3)^-1");
        assert_eq!(CyclotomicProduct::one().to_string(), "1");
    }

    #[test]
    fn binomial_form_renders_shifted_roots() {
        // An odd shift leaves binomial-product land: single (m=1, c) term.
        let shifted = bin(1, 1).shift(&rat(1, 3));
        assert_eq!(shifted.to_string(), "(1-e(2/3)*t)^1");
        assert_eq!(shifted.to_binomial_form().expand(), shifted);
        // Self-conjugate shifts are recognized as binomial ratios:
        // (1 + t) = (1−t²)/(1−t), (1 + t²)³ = ((1−t⁴)/(1−t²))³.
        let half = bin(1, 1).shift(&rat(1, 2));
        assert_eq!(half.to_string(), "(1-t^2)^1 * (1-t)^-1");
        let quarter = bin(2, 3).shift(&rat(1, 4));
        assert_eq!(quarter.to_string(), "(1-t^4)^3 * (1-t^2)^-3");
        assert_eq!(quarter.to_binomial_form().expand(), quarter);
    }

    #[test]
    fn binomial_form_round_trips_on_mixed_products() {
        let cases = [
            bin(6, -2).multiply(&bin(4, 3)).multiply(&bin(1, 5)),
            bin(2, 2).multiply(&bin(3, -3)).shift(&rat(1, 5)),
            bin(12, 1).multiply(&bin(6, -1)).multiply(&bin(4, -1)),
            bin(5, 4).multiply(&bin(5, -4).shift(&rat(1, 10))),
        ];
        for a in cases {
            assert_eq!(a.to_binomial_form().expand(), a, "{a}");
        }
    }

    #[test]
    fn binomial_form_prefers_large_m_and_small_c() {
        // {0,1/2 ↦ 1} ∪ {0 ↦ 1} could be (1−t)²(1−e(1/2)t) but the greedy
        // grouping extracts the full m=2 orbit first.
        let a = bin(2, 1).multiply(&bin(1, 1));
        assert_eq!(a.to_string(), "(1-t^2)^1 * (1-t)^1");
        // (1−t)/(1+t) = (1−t)²/(1−t²): recognized with mixed exponents.
        let b = bin(1, 1).multiply(&bin(1, -1).shift(&rat(1, 2)));
        assert_eq!(b.to_string(), "(1-t)^2 * (1-t^2)^-1");
        assert_eq!(b.to_binomial_form().expand(), b);
        // Incomplete odd orbits stay as shifted linear terms, c ascending.
        let c = bin(1, 3)
            .multiply(&bin(1, 1).shift(&rat(1, 5)))
            .multiply(&bin(1, 1).shift(&rat(2, 5)));
        assert_eq!(c.to_string(), "(1-t)^3 * (1-e(3/5)*t)^1 * (1-e(4/5)*t)^1");
    }
}
