//! The finite abelian symmetry group of an invertible polynomial and its
//! subgroup lattice.
//!
//! An element is a diagonal transformation `x_j ↦ exp(2πi α_j)·x_j` fixing
//! every monomial, i.e. `E·α ∈ Z^n` (or `E^T·α` on the transpose side).
//! A subgroup is stored as an intermediate lattice `A·Z^n ⊆ L ⊆ Z^n` of
//! integer coordinate vectors `v = A·α`, held as a canonical Hermite basis,
//! so sums, intersections, duals, and orders are integer linear algebra and
//! never require enumerating elements.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intlin::{exact_div, lattice_contains, solve_congruence, IntMatrix, RationalVector};
use crate::invpoly::{IndexSet, InvertiblePolynomial};

/// Which of the two paired groups an object lives in: the symmetry group
/// of `f` (acting matrix `E`) or of the transpose polynomial (matrix `E^T`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AmbientTag {
    Source,
    Transpose,
}

impl AmbientTag {
    pub fn opposite(self) -> AmbientTag {
        match self {
            AmbientTag::Source => AmbientTag::Transpose,
            AmbientTag::Transpose => AmbientTag::Source,
        }
    }
}

struct AmbientInner {
    poly: InvertiblePolynomial,
    tag: AmbientTag,
    acting: IntMatrix,
    adj: IntMatrix,
    det: BigInt,
}

/// Shared context for elements and subgroups: the polynomial, the side
/// (source or transpose), and the cached acting matrix with its adjugate.
#[derive(Clone)]
pub struct Ambient {
    inner: Arc<AmbientInner>,
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        self.inner.tag == other.inner.tag && self.inner.acting == other.inner.acting
    }
}

impl Eq for Ambient {}

impl std::fmt::Debug for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ambient({:?}, E = {})", self.inner.tag, self.inner.acting)
    }
}

impl Ambient {
    pub fn new(poly: &InvertiblePolynomial, tag: AmbientTag) -> Ambient {
        let acting = match tag {
            AmbientTag::Source => poly.exponent_matrix().clone(),
            AmbientTag::Transpose => poly.exponent_matrix().transpose(),
        };
        let adj = acting.adjugate().expect("valid polynomial has nonsingular matrix");
        let det = poly.determinant().clone();
        Ambient { inner: Arc::new(AmbientInner { poly: poly.clone(), tag, acting, adj, det }) }
    }

    /// The paired group on the other side of the same polynomial.
    pub fn opposite(&self) -> Ambient {
        Ambient::new(&self.inner.poly, self.inner.tag.opposite())
    }

    pub fn tag(&self) -> AmbientTag {
        self.inner.tag
    }

    pub fn polynomial(&self) -> &InvertiblePolynomial {
        &self.inner.poly
    }

    /// The polynomial whose symmetries this ambient holds (`f` or `f^T`).
    pub fn acting_polynomial(&self) -> Result<InvertiblePolynomial> {
        match self.inner.tag {
            AmbientTag::Source => Ok(self.inner.poly.clone()),
            AmbientTag::Transpose => self.inner.poly.transpose(),
        }
    }

    pub fn acting_matrix(&self) -> &IntMatrix {
        &self.inner.acting
    }

    pub fn adjugate(&self) -> &IntMatrix {
        &self.inner.adj
    }

    /// `d = det E`, the order of the full group on either side.
    pub fn determinant(&self) -> &BigInt {
        &self.inner.det
    }

    pub fn n(&self) -> usize {
        self.inner.poly.n()
    }

    /// Validate `alpha` (reduced mod 1) as a symmetry: `A·α` must be integral.
    pub fn element(&self, alpha: &RationalVector) -> Result<GroupElement> {
        assert_eq!(alpha.len(), self.n(), "coordinate count mismatch");
        let reduced = RationalVector::new(alpha.iter().map(|a| a - a.floor()).collect());
        let image = self.inner.acting.mul_rat_vec(reduced.entries());
        if image.iter().any(|v| !v.is_integer()) {
            return Err(Error::NotASymmetry { alpha: format_alpha(&reduced) });
        }
        Ok(GroupElement { ambient: self.clone(), alpha: reduced })
    }

    /// Element from integer coordinates `v`: `α = A^{-1} v mod 1`.
    pub fn element_from_coords(&self, v: &[BigInt]) -> GroupElement {
        let alpha: Vec<BigRational> = self
            .inner
            .adj
            .mul_int_vec(v)
            .into_iter()
            .map(|num| {
                let r = BigRational::new(num, self.inner.det.clone());
                &r - r.floor()
            })
            .collect();
        GroupElement { ambient: self.clone(), alpha: RationalVector::new(alpha) }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            ambient: self.clone(),
            alpha: RationalVector::new(vec![BigRational::zero(); self.n()]),
        }
    }

    /// The exponential grading operator: `α = q mod 1` for the weights of
    /// the side's polynomial (q solves `A·q = 1⃗`).
    pub fn grading_element(&self) -> GroupElement {
        let ones = RationalVector::from_integers(&vec![1; self.n()]);
        let q = self.inner.acting.solve_exact(&ones).expect("nonsingular acting matrix");
        self.element(&q).expect("A·q = 1⃗ is integral by construction")
    }

    pub fn full_group(&self) -> Subgroup {
        Subgroup { ambient: self.clone(), basis: IntMatrix::identity(self.n()) }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let basis = self.inner.acting.hnf().expect("acting matrix has full rank");
        Subgroup { ambient: self.clone(), basis }
    }

    /// Subgroup generated by the canonical monodromy element g₀.
    pub fn monodromy_subgroup(&self) -> Subgroup {
        self.subgroup_generated(&[self.grading_element()])
            .expect("single element of matching ambient")
    }

    /// Lattice closure of the trivial subgroup and the given elements.
    pub fn subgroup_generated(&self, elements: &[GroupElement]) -> Result<Subgroup> {
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for j in 0..self.n() {
            cols.push(self.inner.acting.col(j));
        }
        for g in elements {
            if g.ambient != *self {
                return Err(Error::MixedAmbients);
            }
            cols.push(g.integer_coords());
        }
        let basis = IntMatrix::from_cols(&cols).hnf()?;
        Ok(Subgroup { ambient: self.clone(), basis })
    }

    /// Subgroup from a raw lattice basis, validated to be intermediate
    /// between the acting lattice and Z^n. Used to carry a subgroup over
    /// to a different ambient with the same acting matrix.
    pub fn subgroup_from_basis(&self, basis: IntMatrix) -> Result<Subgroup> {
        let n = self.n();
        if basis.rows() != n || basis.cols() != n {
            return Err(Error::NonSquare { rows: basis.rows(), cols: basis.cols() });
        }
        let basis = basis.hnf()?;
        if !lattice_contains(&basis, &self.inner.acting)? {
            return Err(Error::NotIntermediate);
        }
        Ok(Subgroup { ambient: self.clone(), basis })
    }

    /// `G^I`: the elements acting trivially on every coordinate in `i`.
    pub fn isotropy(&self, i: &IndexSet) -> Subgroup {
        if i.is_empty() {
            return self.full_group();
        }
        // α_j ∈ Z for j ∈ I means (adj(A)·v)_j ≡ 0 (mod d) on coordinates.
        let rows: Vec<Vec<BigInt>> = i.iter().map(|&j| self.inner.adj.row(j)).collect();
        let constraint = IntMatrix::from_rows(&rows);
        let basis = solve_congruence(&constraint, &self.inner.det)
            .expect("isotropy congruence is always solvable");
        Subgroup { ambient: self.clone(), basis }
    }

    /// Every subgroup (intermediate lattice) exactly once, sorted by order
    /// and then by canonical basis. Requires `d ≤ bound` since the closure
    /// walks the full element list.
    pub fn all_subgroups(&self, bound: u64) -> Result<Vec<Subgroup>> {
        let elements = self.full_group().enumerate(bound)?;
        let mut seen = std::collections::BTreeSet::new();
        let mut queue = vec![self.trivial_subgroup()];
        seen.insert(queue[0].sort_key());
        let mut out = Vec::new();
        while let Some(h) = queue.pop() {
            for g in &elements {
                if h.contains_element(g) {
                    continue;
                }
                let bigger = h.adjoin(g)?;
                if seen.insert(bigger.sort_key()) {
                    queue.push(bigger);
                }
            }
            out.push(h);
        }
        out.sort_by_key(|h| h.sort_key());
        Ok(out)
    }
}

fn format_alpha(alpha: &RationalVector) -> String {
    alpha.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
}

/// One diagonal symmetry, stored as its exponent vector α ∈ [0,1)^n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupElement {
    ambient: Ambient,
    alpha: RationalVector,
}

impl GroupElement {
    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn alpha(&self) -> &RationalVector {
        &self.alpha
    }

    /// Integer coordinates `v = A·α ∈ Z^n`.
    pub fn integer_coords(&self) -> Vec<BigInt> {
        self.ambient
            .acting_matrix()
            .mul_rat_vec(self.alpha.entries())
            .into_iter()
            .map(|v| {
                assert!(v.is_integer(), "validated element has integral image");
                v.to_integer()
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.iter().all(|a| a.is_zero())
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.ambient != other.ambient {
            return Err(Error::MixedAmbients);
        }
        let alpha = RationalVector::new(
            self.alpha
                .iter()
                .zip(other.alpha.iter())
                .map(|(a, b)| {
                    let s = a + b;
                    &s - s.floor()
                })
                .collect(),
        );
        Ok(GroupElement { ambient: self.ambient.clone(), alpha })
    }

    pub fn inverse(&self) -> GroupElement {
        let alpha = RationalVector::new(
            self.alpha
                .iter()
                .map(|a| {
                    let neg = -a;
                    &neg - neg.floor()
                })
                .collect(),
        );
        GroupElement { ambient: self.ambient.clone(), alpha }
    }

    pub fn scale(&self, k: &BigInt) -> GroupElement {
        let factor = BigRational::from(k.clone());
        let alpha = RationalVector::new(
            self.alpha
                .iter()
                .map(|a| {
                    let s = a * &factor;
                    &s - s.floor()
                })
                .collect(),
        );
        GroupElement { ambient: self.ambient.clone(), alpha }
    }

    /// Order in the group: the least k ≥ 1 with k·α ∈ Z^n, i.e. the lcm of
    /// the denominators.
    pub fn order(&self) -> BigInt {
        self.alpha
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()))
    }

    /// age(g) = Σ_i α_i on the canonical representatives in [0,1);
    /// an exact rational in [0, n).
    pub fn age(&self) -> BigRational {
        self.alpha.sum()
    }

    /// Does g fix coordinate i (α_i ∈ Z)?
    pub fn fixes(&self, i: usize) -> bool {
        self.alpha.entry(i).is_integer()
    }

    /// The fixed coordinate set Fix(g) = {i : α_i ∈ Z}.
    pub fn fixed_set(&self) -> IndexSet {
        IndexSet::new((0..self.alpha.len()).filter(|&i| self.fixes(i)).collect())
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", format_alpha(&self.alpha))
    }
}

/// Pairing exponent between λ on the transpose side and μ on the source
/// side of the same polynomial: the rational `r ∈ [0,1)` with pairing value
/// `exp(2πi r)`. In integer coordinates `r = (w^T·adj(E)·v mod d)/d`.
pub fn pairing(lambda: &GroupElement, mu: &GroupElement) -> Result<BigRational> {
    if lambda.ambient.tag() != AmbientTag::Transpose
        || mu.ambient.tag() != AmbientTag::Source
        || lambda.ambient.inner.poly.exponent_matrix() != mu.ambient.inner.poly.exponent_matrix()
    {
        return Err(Error::MixedAmbients);
    }
    let w = lambda.integer_coords();
    let v = mu.integer_coords();
    let adj = mu.ambient.adjugate();
    let d = mu.ambient.determinant();
    let mut acc = BigInt::zero();
    for i in 0..w.len() {
        for j in 0..v.len() {
            acc += &w[i] * adj.at(i, j) * &v[j];
        }
    }
    Ok(BigRational::new(acc.mod_floor(d), d.clone()))
}

/// A subgroup as the intermediate lattice of its integer coordinate
/// vectors, in canonical Hermite basis form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgroup {
    ambient: Ambient,
    basis: IntMatrix,
}

impl Subgroup {
    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    /// Canonical HNF basis of the lattice L with A·Z^n ⊆ L ⊆ Z^n.
    pub fn lattice_basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn order(&self) -> BigInt {
        let basis_det = self.basis.determinant().expect("square HNF basis");
        exact_div(self.ambient.determinant(), &basis_det, "subgroup order")
            .expect("lattice index divides d")
    }

    pub fn is_trivial(&self) -> bool {
        self.order().is_one()
    }

    pub fn is_full(&self) -> bool {
        self.order() == *self.ambient.determinant()
    }

    /// Deterministic ordering key: (order, basis entries row-major).
    pub fn sort_key(&self) -> (BigInt, Vec<BigInt>) {
        let entries = (0..self.basis.rows())
            .flat_map(|i| (0..self.basis.cols()).map(move |j| self.basis.at(i, j).clone()))
            .collect();
        (self.order(), entries)
    }

    pub fn contains_element(&self, g: &GroupElement) -> bool {
        assert_eq!(g.ambient, self.ambient, "ambient mismatch");
        let v = IntMatrix::from_cols(&[g.integer_coords()]);
        lattice_contains(&self.basis, &v).expect("HNF basis is nonsingular")
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        assert_eq!(other.ambient, self.ambient, "ambient mismatch");
        lattice_contains(&self.basis, &other.basis).expect("HNF basis is nonsingular")
    }

    /// The subgroup generated by this one and a single extra element.
    pub fn adjoin(&self, g: &GroupElement) -> Result<Subgroup> {
        if g.ambient != self.ambient {
            return Err(Error::MixedAmbients);
        }
        let extra = IntMatrix::from_cols(&[g.integer_coords()]);
        let basis = self.basis.hstack(&extra).hnf()?;
        Ok(Subgroup { ambient: self.ambient.clone(), basis })
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.ambient != other.ambient {
            return Err(Error::MixedAmbients);
        }
        let basis = self.basis.hstack(&other.basis).hnf()?;
        Ok(Subgroup { ambient: self.ambient.clone(), basis })
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.ambient != other.ambient {
            return Err(Error::MixedAmbients);
        }
        // Solutions of B1·x = B2·y are the kernel of [B1 | −B2]; the
        // intersection lattice is B1 applied to the x-block.
        let mut neg = other.basis.clone();
        for i in 0..neg.rows() {
            for j in 0..neg.cols() {
                let v = -neg.at(i, j).clone();
                *neg.at_mut(i, j) = v;
            }
        }
        let kernel = self
            .basis
            .hstack(&neg)
            .kernel()?
            .expect("two full-rank lattices always intersect in full rank");
        let n = self.basis.rows();
        let top_rows: Vec<Vec<BigInt>> = (0..n).map(|i| kernel.row(i)).collect();
        let x_block = IntMatrix::from_rows(&top_rows);
        let basis = self.basis.mul(&x_block).hnf()?;
        Ok(Subgroup { ambient: self.ambient.clone(), basis })
    }

    /// Invariant factors of the quotient group L/A·Z^n: the Smith diagonal
    /// of B^{-1}·A with unit factors dropped. Product = order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let c = self.coordinates_of_acting();
        let snf = c.snf().expect("integer matrix");
        snf.d
            .diagonal()
            .into_iter()
            .filter(|f| !f.is_one())
            .collect()
    }

    /// B^{-1}·A: the acting matrix's columns in basis coordinates (integral
    /// because A·Z^n ⊆ L).
    fn coordinates_of_acting(&self) -> IntMatrix {
        let adj_b = self.basis.adjugate().expect("HNF basis is nonsingular");
        let det_b = self.basis.determinant().expect("square");
        let scaled = adj_b.mul(self.ambient.acting_matrix());
        let mut c = IntMatrix::zero(scaled.rows(), scaled.cols());
        for i in 0..scaled.rows() {
            for j in 0..scaled.cols() {
                *c.at_mut(i, j) = exact_div(scaled.at(i, j), &det_b, "acting-matrix coordinates")
                    .expect("A·Z^n ⊆ L makes B^{-1}A integral");
            }
        }
        c
    }

    /// All elements, in a deterministic order, as long as order ≤ bound.
    pub fn enumerate(&self, bound: u64) -> Result<Vec<GroupElement>> {
        let order = self.order();
        if order > BigInt::from(bound) {
            return Err(Error::EnumerationBound { order: order.to_string(), bound });
        }
        let c = self.coordinates_of_acting();
        let snf = c.snf().expect("integer matrix");
        // L/A·Z^n ≅ Z^n / C·Z^n; with U·C·V = D the cosets are represented
        // by U^{-1}·y for y in the box ∏ [0, d_i).
        let u_det = snf.u.determinant().expect("unimodular");
        let mut u_inv = snf.u.adjugate().expect("unimodular");
        if u_det == BigInt::from(-1) {
            for i in 0..u_inv.rows() {
                for j in 0..u_inv.cols() {
                    let v = -u_inv.at(i, j).clone();
                    *u_inv.at_mut(i, j) = v;
                }
            }
        }
        let b_u_inv = self.basis.mul(&u_inv);
        let diag: Vec<BigInt> = snf.d.diagonal();
        let n = diag.len();
        let mut y = vec![BigInt::zero(); n];
        let mut out = Vec::new();
        loop {
            let v = b_u_inv.mul_int_vec(&y);
            out.push(self.ambient.element_from_coords(&v));
            // Odometer increment, last coordinate fastest.
            let mut pos = n;
            loop {
                if pos == 0 {
                    debug_assert_eq!(BigInt::from(out.len()), self.order());
                    return Ok(out);
                }
                pos -= 1;
                y[pos] += 1;
                if y[pos] < diag[pos] {
                    break;
                }
                y[pos] = BigInt::zero();
            }
        }
    }

    /// A minimal generating list: one element per nonunit invariant factor.
    pub fn generating_elements(&self) -> Vec<GroupElement> {
        let c = self.coordinates_of_acting();
        let snf = c.snf().expect("integer matrix");
        let u_det = snf.u.determinant().expect("unimodular");
        let mut u_inv = snf.u.adjugate().expect("unimodular");
        if u_det == BigInt::from(-1) {
            for i in 0..u_inv.rows() {
                for j in 0..u_inv.cols() {
                    let v = -u_inv.at(i, j).clone();
                    *u_inv.at_mut(i, j) = v;
                }
            }
        }
        let b_u_inv = self.basis.mul(&u_inv);
        snf.d
            .diagonal()
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_one())
            .map(|(i, _)| self.ambient.element_from_coords(&b_u_inv.col(i)))
            .collect()
    }

    /// {g ∈ H : Σ_i α_i ∈ Z}: the kernel of the determinant character.
    pub fn sl_intersection(&self) -> Subgroup {
        // For v = B·s the age-sum condition is (1⃗^T·adj(A)·B)·s ≡ 0 (mod d).
        let n = self.ambient.n();
        let adj = self.ambient.adjugate();
        let col_sums: Vec<BigInt> = (0..n)
            .map(|j| (0..n).map(|i| adj.at(i, j).clone()).sum())
            .collect();
        let row = IntMatrix::from_rows(&[col_sums]);
        let constraint = row.mul(&self.basis);
        let s_lattice = solve_congruence(&constraint, self.ambient.determinant())
            .expect("congruence lattice has full rank");
        let basis = self.basis.mul(&s_lattice).hnf().expect("full-rank product");
        Subgroup { ambient: self.ambient.clone(), basis }
    }

    /// The annihilator of this subgroup under the pairing, living on the
    /// opposite side: {w : w^T·adj(E)·v ≡ 0 (mod d) for all v ∈ L}.
    pub fn dual_subgroup(&self) -> Subgroup {
        let opposite = self.ambient.opposite();
        // The pairing exponent in integer coordinates is w^T·adj(E)·v/d
        // with v on the source side. Annihilating every basis column of
        // this subgroup constrains the opposite-side coordinates u by the
        // rows of B^T·adj(A_opp): on either side the matrix sandwiched
        // against u is the adjugate of the opposite acting matrix.
        let rows = self.basis.transpose().mul(opposite.adjugate());
        let basis = solve_congruence(&rows, self.ambient.determinant())
            .expect("annihilator lattice has full rank");
        Subgroup { ambient: opposite, basis }
    }
}

impl std::fmt::Display for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens = self.generating_elements();
        if gens.is_empty() {
            return write!(f, "trivial group");
        }
        let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// Parse "5/6,1/3" into a rational vector (entries may be negative or
/// improper; callers reduce mod 1).
pub fn parse_rational_vector(text: &str) -> Result<RationalVector> {
    let entries: Vec<BigRational> = text
        .split(',')
        .map(|part| {
            let part = part.trim();
            let (num, den) = match part.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (part, "1"),
            };
            let num: BigInt =
                num.parse().map_err(|_| Error::Parse(format!("bad rational {part:?}")))?;
            let den: BigInt =
                den.parse().map_err(|_| Error::Parse(format!("bad rational {part:?}")))?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {part:?}")));
            }
            Ok(BigRational::new(num, den))
        })
        .collect::<Result<_>>()?;
    Ok(RationalVector::new(entries))
}

/// Parse a ';'-separated list of rational vectors ("1/2,0;0,1/3").
pub fn parse_generator_list(text: &str) -> Result<Vec<RationalVector>> {
    text.split(';').map(parse_rational_vector).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(text: &str) -> InvertiblePolynomial {
        InvertiblePolynomial::parse(text).unwrap().0
    }

    fn rv(entries: &[(i64, i64)]) -> RationalVector {
        RationalVector::new(
            entries.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect(),
        )
    }

    #[test]
    fn element_membership_is_checked() {
        let p = poly("x^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        assert!(a.element(&rv(&[(1, 3)])).is_ok());
        assert!(matches!(a.element(&rv(&[(1, 2)])), Err(Error::NotASymmetry { .. })));

        let p = poly("x^2*y + y^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        let g = a.element(&rv(&[(5, 6), (1, 3)])).unwrap();
        assert_eq!(g.integer_coords(), vec![BigInt::from(2), BigInt::from(1)]);
    }

    #[test]
    fn element_coordinates_reduce_mod_one() {
        let p = poly("x^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        let g = a.element(&rv(&[(-1, 3)])).unwrap();
        assert_eq!(g.alpha().entry(0), &BigRational::new(2.into(), 3.into()));
        let h = a.element(&rv(&[(4, 3)])).unwrap();
        assert_eq!(h.alpha().entry(0), &BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn full_and_trivial_orders() {
        for (text, d) in [("x^3", 3), ("x^2*y + y^3", 6), ("x^2 + y^2", 4)] {
            let p = poly(text);
            for tag in [AmbientTag::Source, AmbientTag::Transpose] {
                let a = Ambient::new(&p, tag);
                assert_eq!(a.full_group().order(), BigInt::from(d), "{text}");
                assert_eq!(a.trivial_subgroup().order(), BigInt::one(), "{text}");
            }
        }
    }

    #[test]
    fn enumeration_matches_order_and_is_closed() {
        let p = poly("x^2*y + y^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        let full = a.full_group();
        let elements = full.enumerate(100).unwrap();
        assert_eq!(elements.len(), 6);
        // Distinct, and closed under addition.
        for g in &elements {
            for h in &elements {
                let sum = g.add(h).unwrap();
                assert!(elements.iter().any(|e| *e == sum));
            }
        }
        let mut alphas: Vec<String> = elements.iter().map(|g| g.to_string()).collect();
        alphas.sort();
        alphas.dedup();
        assert_eq!(alphas.len(), 6);
    }

    #[test]
    fn fermat_cube_root_enumeration() {
        let p = poly("x^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        let mut got: Vec<BigRational> =
            a.full_group().enumerate(10).unwrap().iter().map(|g| g.alpha().entry(0).clone()).collect();
        got.sort();
        let want: Vec<BigRational> =
            [(0, 1), (1, 3), (2, 3)].iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let p = poly("x^2*y + y^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        assert!(matches!(
            a.full_group().enumerate(5),
            Err(Error::EnumerationBound { bound: 5, .. })
        ));
    }

    #[test]
    fn subgroup_generated_reaches_expected_orders() {
        let p = poly("x^2*y + y^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        assert_eq!(a.subgroup_generated(&[]).unwrap().order(), BigInt::one());
        let g = a.element(&rv(&[(5, 6), (1, 3)])).unwrap();
        let h = a.subgroup_generated(&[g.clone()]).unwrap();
        assert_eq!(h.order(), BigInt::from(6));
        assert!(h.contains_element(&g));
        let g3 = a.element(&rv(&[(1, 3), (1, 3)])).unwrap();
        assert_eq!(a.subgroup_generated(&[g3]).unwrap().order(), BigInt::from(3));
    }

    #[test]
    fn element_order_and_scale_iterate_correctly() {
        let p = poly("x^2*y + y^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        let g = a.element(&rv(&[(5, 6), (1, 3)])).unwrap();
        assert_eq!(g.order(), BigInt::from(6));
        // Powers of g are pairwise distinct until the order.
        let mut seen = Vec::new();
        for k in 0..6 {
            let p = g.scale(&BigInt::from(k));
            assert!(!seen.contains(&p));
            seen.push(p);
        }
        assert!(g.scale(&BigInt::from(6)).is_identity());
        assert!(g.add(&g.inverse()).unwrap().is_identity());
    }

    #[test]
    fn sum_and_intersection_laws() {
        let p = poly("x^2*y + y^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        let full = a.full_group();
        let trivial = a.trivial_subgroup();
        let g0 = a.monodromy_subgroup();
        assert_eq!(g0.sum(&trivial).unwrap(), g0);
        assert_eq!(g0.intersect(&full).unwrap(), g0);

        // ⟨(1/3,1/3)⟩ + ⟨(1/2,0)⟩ = full group of order 6.
        let h3 = a.subgroup_generated(&[a.element(&rv(&[(1, 3), (1, 3)])).unwrap()]).unwrap();
        let h2 = a.subgroup_generated(&[a.element(&rv(&[(1, 2), (0, 1)])).unwrap()]).unwrap();
        assert_eq!(h3.sum(&h2).unwrap(), full);
        assert_eq!(h3.intersect(&h2).unwrap(), trivial);
        // order(sum)·order(intersect) = order(h1)·order(h2).
        assert_eq!(
            h3.sum(&h2).unwrap().order() * h3.intersect(&h2).unwrap().order(),
            h3.order() * h2.order()
        );

        // intersect(⟨g₀⟩, isotropy({2})) is trivial.
        let iso = a.isotropy(&IndexSet::new(vec![1]));
        assert_eq!(g0.intersect(&iso).unwrap(), trivial);
    }

    #[test]
    fn invariant_factors_describe_group_structure() {
        let p = poly("x^2*y + y^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        assert_eq!(a.full_group().invariant_factors(), vec![BigInt::from(6)]);
        assert!(a.trivial_subgroup().invariant_factors().is_empty());

        let fermat = poly("x^2 + y^2");
        let b = Ambient::new(&fermat, AmbientTag::Source);
        assert_eq!(b.full_group().invariant_factors(), vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn isotropy_filters_enumerated_elements() {
        let p = poly("x^2*y + y^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        assert_eq!(a.isotropy(&IndexSet::empty()), a.full_group());
        assert_eq!(a.isotropy(&IndexSet::all(2)), a.trivial_subgroup());

        let iso = a.isotropy(&IndexSet::new(vec![1]));
        assert_eq!(iso.order(), BigInt::from(2));
        let elements = iso.enumerate(10).unwrap();
        assert!(elements.iter().all(|g| g.fixes(1)));
        // Matches filtering the full enumeration.
        let full: Vec<_> = a.full_group().enumerate(10).unwrap();
        let filtered: Vec<_> = full.iter().filter(|g| g.fixes(1)).collect();
        assert_eq!(filtered.len(), 2);

        // Isotropy intersection law on all subsets.
        for i_bits in 0..4u32 {
            for j_bits in 0..4u32 {
                let i = IndexSet::new((0..2).filter(|k| i_bits >> k & 1 == 1).collect());
                let j = IndexSet::new((0..2).filter(|k| j_bits >> k & 1 == 1).collect());
                let union = IndexSet::new(i.iter().chain(j.iter()).copied().collect());
                assert_eq!(
                    a.isotropy(&i).intersect(&a.isotropy(&j)).unwrap(),
                    a.isotropy(&union)
                );
            }
        }
    }

    #[test]
    fn sl_intersection_filters_by_age_sum() {
        let p = poly("x^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        assert_eq!(a.full_group().sl_intersection(), a.trivial_subgroup());

        let fermat = poly("x^2 + y^2");
        let b = Ambient::new(&fermat, AmbientTag::Source);
        let sl = b.full_group().sl_intersection();
        assert_eq!(sl.order(), BigInt::from(2));
        let elements = sl.enumerate(10).unwrap();
        assert!(elements.iter().all(|g| g.age().is_integer()));
        let nontrivial = elements.iter().find(|g| !g.is_identity()).unwrap();
        assert_eq!(nontrivial.alpha(), &rv(&[(1, 2), (1, 2)]));

        // Agreement with filtering on a larger example.
        let p = poly("x^2*y + y^3");
        let c = Ambient::new(&p, AmbientTag::Source);
        let sl = c.full_group().sl_intersection();
        let filtered = c
            .full_group()
            .enumerate(10)
            .unwrap()
            .into_iter()
            .filter(|g| g.age().is_integer())
            .count();
        assert_eq!(BigInt::from(filtered), sl.order());
    }

    #[test]
    fn age_examples() {
        let p = poly("x^2*y + y^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        assert!(a.identity().age().is_zero());
        assert_eq!(
            a.element(&rv(&[(1, 3), (1, 3)])).unwrap().age(),
            BigRational::new(2.into(), 3.into())
        );
        assert_eq!(
            a.element(&rv(&[(5, 6), (1, 3)])).unwrap().age(),
            BigRational::new(7.into(), 6.into())
        );
    }

    #[test]
    fn pairing_evaluates_bilinear_form() {
        let p = poly("x^3");
        let src = Ambient::new(&p, AmbientTag::Source);
        let tr = Ambient::new(&p, AmbientTag::Transpose);
        let lam = tr.element(&rv(&[(1, 3)])).unwrap();
        let mu = src.element(&rv(&[(1, 3)])).unwrap();
        assert_eq!(pairing(&lam, &mu).unwrap(), BigRational::new(1.into(), 3.into()));
        assert!(pairing(&tr.identity(), &mu).unwrap().is_zero());
        // Swapped ambients are rejected.
        assert!(pairing(&mu, &lam).is_err());

        // Cross-check the closed form against α·E·β on a 2-variable case.
        let p = poly("x^2*y + y^3");
        let src = Ambient::new(&p, AmbientTag::Source);
        let tr = Ambient::new(&p, AmbientTag::Transpose);
        let lam = tr.element(&rv(&[(1, 2), (1, 6)])).unwrap();
        let mu = src.element(&rv(&[(5, 6), (1, 3)])).unwrap();
        let direct: BigRational = (0..2)
            .map(|i| {
                (0..2)
                    .map(|j| {
                        BigRational::from(p.exponent_matrix().at(i, j).clone())
                            * lam.alpha().entry(i)
                            * mu.alpha().entry(j)
                    })
                    .sum::<BigRational>()
            })
            .sum();
        let reduced = &direct - direct.floor();
        assert_eq!(pairing(&lam, &mu).unwrap(), reduced);
    }

    #[test]
    fn pairing_is_biadditive() {
        let p = poly("x^2*y + y^3");
        let src = Ambient::new(&p, AmbientTag::Source);
        let tr = Ambient::new(&p, AmbientTag::Transpose);
        let lams = tr.full_group().enumerate(10).unwrap();
        let mus = src.full_group().enumerate(10).unwrap();
        for l1 in &lams {
            for l2 in &lams {
                for m in &mus {
                    let lhs = pairing(&l1.add(l2).unwrap(), m).unwrap();
                    let rhs = pairing(l1, m).unwrap() + pairing(l2, m).unwrap();
                    assert_eq!(lhs, &rhs - rhs.floor());
                }
            }
        }
    }

    #[test]
    fn dual_subgroup_examples_and_involution() {
        let p = poly("x^2*y + y^3");
        let src = Ambient::new(&p, AmbientTag::Source);
        let tr = Ambient::new(&p, AmbientTag::Transpose);
        let d = src.determinant().clone();

        assert_eq!(src.trivial_subgroup().dual_subgroup(), tr.full_group());
        assert_eq!(src.full_group().dual_subgroup(), tr.trivial_subgroup());

        // dual(⟨g₀⟩) = SL intersection of the opposite full group.
        assert_eq!(
            src.monodromy_subgroup().dual_subgroup(),
            tr.full_group().sl_intersection()
        );
        assert_eq!(
            tr.monodromy_subgroup().dual_subgroup(),
            src.full_group().sl_intersection()
        );

        // Involution, order product, and annihilation, over every subgroup.
        for h in src.all_subgroups(100).unwrap() {
            let dual = h.dual_subgroup();
            assert_eq!(dual.dual_subgroup(), h);
            assert_eq!(h.order() * dual.order(), d);
            for lam in dual.enumerate(100).unwrap() {
                for mu in h.enumerate(100).unwrap() {
                    assert!(pairing(&lam, &mu).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn dual_subgroup_is_antitone() {
        let p = poly("x^2*y + y^3");
        let src = Ambient::new(&p, AmbientTag::Source);
        let subgroups = src.all_subgroups(100).unwrap();
        for h1 in &subgroups {
            for h2 in &subgroups {
                if h2.contains_subgroup(h1) {
                    assert!(h1.dual_subgroup().contains_subgroup(&h2.dual_subgroup()));
                }
            }
        }
    }

    #[test]
    fn monodromy_subgroup_orders() {
        let p = poly("x^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        assert_eq!(a.monodromy_subgroup(), a.full_group());

        let p = poly("x^2*y + y^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        let g0 = a.monodromy_subgroup();
        assert_eq!(g0.order(), BigInt::from(3));
        let mut alphas: Vec<String> =
            g0.enumerate(10).unwrap().iter().map(|g| g.to_string()).collect();
        alphas.sort();
        assert_eq!(alphas, vec!["(0,0)", "(1/3,1/3)", "(2/3,2/3)"]);
        // Lagrange: order divides d.
        assert!(a.determinant().mod_floor(&g0.order()).is_zero());
    }

    #[test]
    fn grading_element_matches_weights() {
        let p = poly("x^2 + x*y^3");
        let src = Ambient::new(&p, AmbientTag::Source);
        assert_eq!(src.grading_element().alpha(), &rv(&[(1, 2), (1, 6)]));
        // Transpose side grades by the transpose weights.
        let tr = Ambient::new(&p, AmbientTag::Transpose);
        let tp = p.transpose().unwrap();
        assert_eq!(
            tr.grading_element().alpha().entries(),
            tp.weights().vector().entries()
        );
    }

    #[test]
    fn all_subgroups_counts() {
        let p = poly("x^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        assert_eq!(a.all_subgroups(100).unwrap().len(), 2);

        let p = poly("x^2*y + y^3");
        let a = Ambient::new(&p, AmbientTag::Source);
        let subs = a.all_subgroups(100).unwrap();
        assert_eq!(subs.len(), 4);
        let mut orders: Vec<BigInt> = subs.iter().map(|h| h.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 3, 6].into_iter().map(BigInt::from).collect::<Vec<_>>());

        // Klein four-group: 5 subgroups.
        let p = poly("x^2 + y^2");
        let a = Ambient::new(&p, AmbientTag::Source);
        assert_eq!(a.all_subgroups(100).unwrap().len(), 5);
    }

    #[test]
    fn age_is_a_homomorphism_mod_one() {
        let p = poly("x^2 + y^2");
        let a = Ambient::new(&p, AmbientTag::Source);
        let elements = a.full_group().enumerate(10).unwrap();
        for g in &elements {
            for h in &elements {
                let defect = g.age() + h.age() - g.add(h).unwrap().age();
                assert!(defect.is_integer());
            }
        }
    }

    #[test]
    fn generating_elements_regenerate_the_subgroup() {
        let p = poly("x^2 + y^2");
        let a = Ambient::new(&p, AmbientTag::Source);
        for h in a.all_subgroups(100).unwrap() {
            let gens = h.generating_elements();
            assert_eq!(a.subgroup_generated(&gens).unwrap(), h);
            assert_eq!(gens.len(), h.invariant_factors().len());
        }
    }

    #[test]
    fn parse_rational_vectors_and_generator_lists() {
        let v = parse_rational_vector("5/6, 1/3").unwrap();
        assert_eq!(v, rv(&[(5, 6), (1, 3)]));
        let v = parse_rational_vector("-1/3,2").unwrap();
        assert_eq!(v.entry(0), &BigRational::new((-1).into(), 3.into()));
        let gens = parse_generator_list("1/2,0;0,1/3").unwrap();
        assert_eq!(gens.len(), 2);
        assert!(parse_rational_vector("1/0").is_err());
        assert!(parse_rational_vector("x").is_err());
    }

    #[test]
    fn mixed_ambients_are_rejected() {
        let p = poly("x^2*y + y^3");
        let src = Ambient::new(&p, AmbientTag::Source);
        let tr = Ambient::new(&p, AmbientTag::Transpose);
        let g = src.identity();
        let h = tr.identity();
        assert!(matches!(g.add(&h), Err(Error::MixedAmbients)));
        assert!(matches!(
            src.full_group().sum(&tr.full_group()),
            Err(Error::MixedAmbients)
        ));
        assert!(matches!(
            tr.subgroup_generated(&[g]),
            Err(Error::MixedAmbients)
        ));
    }
}
