//! Orbifold and reduced orbifold monodromy zeta functions of a pair
//! (invertible polynomial, symmetry subgroup), computed by two independent
//! routes, plus the duality verification between a pair and its
//! Berglund–Hübsch–Henningson dual.
//!
//! Route one (formula) multiplies one closed-form binomial per coordinate
//! torus; route two (definition) walks the group element by element,
//! age-shifting each fixed-locus zeta factor. Both are exact; their
//! agreement is itself one of the verified identities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cyczeta::{aggregate_shifted_binomial, CyclotomicProduct};
use crate::error::{Error, Result};
use crate::intlin::exact_div;
use crate::invpoly::{IndexSet, InvertiblePolynomial};
use crate::symgroup::{Ambient, AmbientTag, Subgroup};

/// Euler characteristic of the part of the Milnor fiber in the coordinate
/// torus of `i`: 0 when fewer than |i| monomials live inside `i`, else
/// (−1)^{|i|−1}·|det E_I|. The flag reports whether det E_I was negative
/// (the absolute value is a normalization choice worth auditing).
pub fn chi_torus(p: &InvertiblePolynomial, i: &IndexSet) -> (BigInt, bool) {
    let (_, sub) = p.support_restriction(i);
    match sub {
        None => (BigInt::zero(), false),
        Some(e_i) => {
            let det = e_i.determinant().expect("square support submatrix");
            let negative = det.is_negative();
            let magnitude = det.abs();
            let chi = if i.len() % 2 == 1 { magnitude } else { -magnitude };
            (chi, negative)
        }
    }
}

/// The per-torus invariants of a pair at an index set I.
///
/// `m` is the order of the monodromy acting on the quotiented torus part,
/// `k` the index of the SL part inside G ∩ G_f^I, `ell = lcm(m, k)`,
/// `s` the exponent of (1 − t^m) in the unshifted sector zeta, and
/// `s_prime` the exponent of (1 − t^ell) after aggregating over the group.
/// All divisions are exact by construction; a failure is a bug.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorusFactorData {
    pub i: IndexSet,
    pub chi: BigInt,
    pub m: BigInt,
    pub k: BigInt,
    pub ell: BigInt,
    pub s: BigInt,
    pub s_prime: BigInt,
    pub chi_det_negative: bool,
}

/// Which computation path produces the zeta function.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Route {
    Formula,
    Definition,
}

/// A polynomial together with a subgroup of its (source-side) symmetries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbifoldPair {
    group: Subgroup,
}

impl OrbifoldPair {
    /// The subgroup must live on the source side of its polynomial.
    pub fn new(group: Subgroup) -> Result<OrbifoldPair> {
        if group.ambient().tag() != AmbientTag::Source {
            return Err(Error::MixedAmbients);
        }
        Ok(OrbifoldPair { group })
    }

    pub fn polynomial(&self) -> &InvertiblePolynomial {
        self.group.ambient().polynomial()
    }

    pub fn group(&self) -> &Subgroup {
        &self.group
    }

    pub fn ambient(&self) -> &Ambient {
        self.group.ambient()
    }

    /// Torus invariants at any I ⊆ {1,…,n}, the empty set included (there
    /// chi = s = s_prime = 0 and m, k carry the ∅-conventions m_∅ = 1,
    /// k_∅ = |G| / |G ∩ SL|).
    pub fn torus_data(&self, i: &IndexSet) -> Result<TorusFactorData> {
        let ambient = self.ambient();
        let g = &self.group;
        let isotropy = ambient.isotropy(i);
        let monodromy = ambient.monodromy_subgroup();

        let g_plus_iso = g.sum(&isotropy)?;
        let with_monodromy = g_plus_iso.sum(&monodromy)?;
        let m = exact_div(&with_monodromy.order(), &g_plus_iso.order(), "torus order m_I")?;

        let g_cap_iso = g.intersect(&isotropy)?;
        let k = exact_div(
            &g_cap_iso.order(),
            &g_cap_iso.sl_intersection().order(),
            "torus order k_I",
        )?;
        let ell = m.lcm(&k);

        let (chi, chi_det_negative) = if i.is_empty() {
            (BigInt::zero(), false)
        } else {
            chi_torus(self.polynomial(), i)
        };
        let orbit_size = &m * exact_div(&g.order(), &g_cap_iso.order(), "index of G ∩ G_f^I")?;
        let s = exact_div(&chi, &orbit_size, "torus exponent s_I")?;
        let s_prime = exact_div(&(&s * &m * g_cap_iso.order()), &ell, "torus exponent s_I'")?;
        Ok(TorusFactorData { i: i.clone(), chi, m, k, ell, s, s_prime, chi_det_negative })
    }

    /// Torus data for every I in subset-bitmask order (∅ first, I₀ last).
    pub fn all_torus_data(&self) -> Result<Vec<TorusFactorData>> {
        IndexSet::power_set(self.polynomial().n())
            .iter()
            .map(|i| self.torus_data(i))
            .collect()
    }

    /// Closed-form route: ∏ over nonempty I of (1 − t^{ℓ_I})^{s'_I}.
    pub fn orbifold_zeta_formula(&self) -> Result<CyclotomicProduct> {
        let mut zeta = CyclotomicProduct::one();
        for i in IndexSet::power_set(self.polynomial().n()) {
            if i.is_empty() {
                continue;
            }
            let data = self.torus_data(&i)?;
            if !data.s_prime.is_zero() {
                zeta.multiply_in_place(&CyclotomicProduct::binomial(&data.ell, &data.s_prime));
            }
        }
        Ok(zeta)
    }

    /// Definitional route: for every g ∈ G multiply the age-shifted zeta of
    /// the monodromy on the fixed locus of g,
    /// ∏ over nonempty J ⊆ Fix(g) of (1 − t^{m_J})^{s_J}.
    /// Needs |G| ≤ bound. Asserts the sector regrouping law
    /// #{g : J ⊆ Fix(g)} = |G ∩ G_f^J| en route.
    pub fn orbifold_zeta_definition(&self, bound: u64) -> Result<CyclotomicProduct> {
        let n = self.polynomial().n();
        let elements = self.group.enumerate(bound)?;
        let mut data_by_set: BTreeMap<IndexSet, TorusFactorData> = BTreeMap::new();
        for i in IndexSet::power_set(n) {
            if !i.is_empty() {
                data_by_set.insert(i.clone(), self.torus_data(&i)?);
            }
        }
        let mut sector_counts: BTreeMap<IndexSet, u64> = BTreeMap::new();
        let mut zeta = CyclotomicProduct::one();
        for g in &elements {
            let fix = g.fixed_set();
            let mut sector = CyclotomicProduct::one();
            for j in nonempty_subsets(&fix) {
                let data = &data_by_set[&j];
                *sector_counts.entry(j).or_insert(0) += 1;
                if !data.s.is_zero() {
                    sector.multiply_in_place(&CyclotomicProduct::binomial(&data.m, &data.s));
                }
            }
            zeta.multiply_in_place(&sector.age_shift(g));
        }
        for (j, data) in &data_by_set {
            let count = BigInt::from(sector_counts.get(j).copied().unwrap_or(0));
            let expected = self
                .group
                .intersect(&self.ambient().isotropy(j))
                .expect("same ambient")
                .order();
            assert_eq!(
                count, expected,
                "sector regrouping violated at J = {j}: {count} sectors vs |G ∩ G^J| = {expected}"
            );
            let _ = data;
        }
        Ok(zeta)
    }

    pub fn orbifold_zeta(&self, route: Route, bound: u64) -> Result<CyclotomicProduct> {
        match route {
            Route::Formula => self.orbifold_zeta_formula(),
            Route::Definition => self.orbifold_zeta_definition(bound),
        }
    }

    /// Divide the orbifold zeta by ∏_{g∈G} (1 − t)_g.
    pub fn reduced_orbifold_zeta(&self, route: Route, bound: u64) -> Result<CyclotomicProduct> {
        let zeta = self.orbifold_zeta(route, bound)?;
        let divisor = aggregate_shifted_binomial(&BigInt::one(), &self.group)?;
        Ok(zeta.multiply(&divisor.invert()))
    }

    /// Degree of the orbifold zeta function.
    pub fn orbifold_euler_characteristic(&self) -> Result<BigInt> {
        Ok(self.orbifold_zeta_formula()?.degree())
    }

    /// The Berglund–Hübsch–Henningson dual pair: (transpose polynomial,
    /// dual subgroup) with the dual subgroup rerooted as a source-side
    /// subgroup of the transpose polynomial (same acting matrix E^T).
    pub fn dual(&self) -> Result<OrbifoldPair> {
        let dual_sub = self.group.dual_subgroup();
        let transposed = self.polynomial().transpose()?;
        let ambient = Ambient::new(&transposed, AmbientTag::Source);
        let group = ambient.subgroup_from_basis(dual_sub.lattice_basis().clone())?;
        OrbifoldPair::new(group)
    }
}

fn nonempty_subsets(of: &IndexSet) -> Vec<IndexSet> {
    let indices = of.indices();
    (1u64..(1u64 << indices.len()))
        .map(|bits| {
            IndexSet::new(
                indices
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| bits >> b & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
        .collect()
}

/// Outcome of the two-route cross-check inside a duality verification.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RouteEquivalence {
    Pass,
    Fail,
    SkippedBound,
}

/// All exact checks of the duality theorem and its supporting identities
/// for one pair and its dual. Torus tables are in subset-bitmask order,
/// so the complementary set of index `i` sits at index `(2^n − 1) ^ i`.
#[derive(Clone, Debug)]
pub struct DualityReport {
    pub pair: OrbifoldPair,
    pub dual: OrbifoldPair,
    pub pair_reduced_zeta: CyclotomicProduct,
    pub dual_reduced_zeta: CyclotomicProduct,
    pub pair_torus: Vec<TorusFactorData>,
    pub dual_torus: Vec<TorusFactorData>,
    /// ζ̄ of the dual equals ζ̄ of the pair raised to (−1)^n.
    pub main_theorem: bool,
    /// The dual of the monodromy subgroup is the SL part of the opposite
    /// full group, in both directions.
    pub lemma_sl: bool,
    /// |H| · |H̃| = d.
    pub order_product: bool,
    /// dual(G_f^I) = G_f̃^{Ī} for every I with |supp(f) ∩ Z^I| = |I|, and
    /// support degeneracy at I for f matches degeneracy at Ī for f̃.
    pub blms_isotropy: bool,
    /// m_I = k̃_Ī and k_I = m̃_Ī (hence ℓ_I = ℓ̃_Ī) for every I with
    /// |supp(f) ∩ Z^I| = |I|; degenerate I carry no claim (factors are 1).
    pub ell_swap: bool,
    /// s'_I = (−1)^n · s̃'_Ī for proper nonempty I, and at I₀ the boundary
    /// form s_{I₀} = (−1)^{n−1} · |G̃|/k̃ (and its mirror).
    pub sign_identity: bool,
    /// m_{I₀} = k̃ (and its mirror).
    pub m_i0_equals_k_tilde: bool,
    pub route_equivalence: RouteEquivalence,
}

impl DualityReport {
    /// Every verdict holds; a bound-skipped route check does not fail.
    pub fn all_pass(&self) -> bool {
        self.main_theorem
            && self.lemma_sl
            && self.order_product
            && self.blms_isotropy
            && self.ell_swap
            && self.sign_identity
            && self.m_i0_equals_k_tilde
            && self.route_equivalence != RouteEquivalence::Fail
    }

    pub fn verdicts(&self) -> Vec<(&'static str, String)> {
        let show = |b: bool| if b { "pass".to_string() } else { "FAIL".to_string() };
        vec![
            ("mainTheorem", show(self.main_theorem)),
            ("lemmaSL", show(self.lemma_sl)),
            ("orderProduct", show(self.order_product)),
            ("blmsIsotropy", show(self.blms_isotropy)),
            ("ellSwap", show(self.ell_swap)),
            ("signIdentity", show(self.sign_identity)),
            ("mI0equalsKtilde", show(self.m_i0_equals_k_tilde)),
            (
                "routeEquivalence",
                match self.route_equivalence {
                    RouteEquivalence::Pass => "pass".to_string(),
                    RouteEquivalence::Fail => "FAIL".to_string(),
                    RouteEquivalence::SkippedBound => "skipped (bound)".to_string(),
                },
            ),
        ]
    }
}

/// Compute both sides of the duality and check the main theorem together
/// with every supporting identity, all by exact equality.
pub fn verify_duality(pair: &OrbifoldPair, bound: u64) -> Result<DualityReport> {
    let dual = pair.dual()?;
    let n = pair.polynomial().n();
    let d = pair.ambient().determinant().clone();
    let full_mask = (1usize << n) - 1;

    let pair_torus = pair.all_torus_data()?;
    let dual_torus = dual.all_torus_data()?;
    let pair_reduced_zeta = pair.reduced_orbifold_zeta(Route::Formula, bound)?;
    let dual_reduced_zeta = dual.reduced_orbifold_zeta(Route::Formula, bound)?;

    let expected_dual = if n % 2 == 0 {
        pair_reduced_zeta.clone()
    } else {
        pair_reduced_zeta.invert()
    };
    let main_theorem = dual_reduced_zeta == expected_dual;

    let src = pair.ambient();
    let tr = src.opposite();
    let lemma_sl = src.monodromy_subgroup().dual_subgroup()
        == tr.full_group().sl_intersection()
        && tr.monodromy_subgroup().dual_subgroup() == src.full_group().sl_intersection();

    let order_product = pair.group().order() * dual.group().order() == d;

    // The isotropy-duality and order-swap identities hold in the case
    // |supp(f) ∩ Z^I| = |I|; otherwise both torus factors are 1 and the
    // claim is that the degeneracy itself is complement-symmetric.
    let degenerate = |p: &InvertiblePolynomial, i: &IndexSet| -> bool {
        !i.is_empty() && p.support_restriction(i).1.is_none()
    };

    // The dual-side isotropy lives on the transpose polynomial's source
    // ambient; compare against the pair's transpose ambient via bases
    // (the acting matrices agree).
    let mut blms_isotropy = true;
    for i in IndexSet::power_set(n) {
        let co = i.complement(n);
        if degenerate(pair.polynomial(), &i) {
            if !degenerate(dual.polynomial(), &co) {
                blms_isotropy = false;
            }
            continue;
        }
        if degenerate(dual.polynomial(), &co) {
            blms_isotropy = false;
            continue;
        }
        let lhs = src.isotropy(&i).dual_subgroup();
        let rhs = tr.isotropy(&co);
        if lhs != rhs {
            blms_isotropy = false;
        }
    }

    let mut ell_swap = true;
    let mut sign_identity = true;
    for (idx, data) in pair_torus.iter().enumerate() {
        let co = &dual_torus[full_mask ^ idx];
        if !degenerate(pair.polynomial(), &data.i)
            && (data.m != co.k || data.k != co.m || data.ell != co.ell)
        {
            ell_swap = false;
        }
        if idx != 0 && idx != full_mask {
            let expected = if n % 2 == 0 { co.s_prime.clone() } else { -co.s_prime.clone() };
            if data.s_prime != expected {
                sign_identity = false;
            }
        }
    }
    // Boundary form at I₀: s_{I₀} = (−1)^{n−1}·|G̃|/k̃, and its mirror.
    let r_dual = exact_div(&dual.group().order(), &dual_torus[0].k, "regular orbit count")?;
    let r_pair = exact_div(&pair.group().order(), &pair_torus[0].k, "regular orbit count")?;
    let sign = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    if pair_torus[full_mask].s != &sign * &r_dual || dual_torus[full_mask].s != &sign * &r_pair {
        sign_identity = false;
    }

    let m_i0_equals_k_tilde =
        pair_torus[full_mask].m == dual_torus[0].k && dual_torus[full_mask].m == pair_torus[0].k;

    let enumerable = pair.group().order() <= BigInt::from(bound)
        && dual.group().order() <= BigInt::from(bound);
    let route_equivalence = if enumerable {
        let pair_ok = pair.orbifold_zeta_definition(bound)? == pair.orbifold_zeta_formula()?;
        let dual_ok = dual.orbifold_zeta_definition(bound)? == dual.orbifold_zeta_formula()?;
        if pair_ok && dual_ok {
            RouteEquivalence::Pass
        } else {
            RouteEquivalence::Fail
        }
    } else {
        RouteEquivalence::SkippedBound
    };

    Ok(DualityReport {
        pair: pair.clone(),
        dual,
        pair_reduced_zeta,
        dual_reduced_zeta,
        pair_torus,
        dual_torus,
        main_theorem,
        lemma_sl,
        order_product,
        blms_isotropy,
        ell_swap,
        sign_identity,
        m_i0_equals_k_tilde,
        route_equivalence,
    })
}
