//! Deterministic corpus of invertible polynomials built from the atomic
//! block types — Fermat x^a, chains x1^{a1}x2 + … + xk^{ak}, and loops
//! x1^{a1}x2 + … + xk^{ak}x1 — and their direct sums across disjoint
//! variables. Used by verification sweeps that must cover "every small
//! invertible polynomial" reproducibly.

use num_bigint::BigInt;
use num_traits::One;

use crate::intlin::IntMatrix;
use crate::invpoly::{default_names, InvertiblePolynomial};
use crate::Result;

/// One atomic summand. Exponents are ≥ 2 throughout: smaller values make
/// the weights degenerate or duplicate monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Block {
    Fermat(u32),
    Chain(Vec<u32>),
    Loop(Vec<u32>),
}

impl Block {
    pub fn arity(&self) -> usize {
        match self {
            Block::Fermat(_) => 1,
            Block::Chain(a) | Block::Loop(a) => a.len(),
        }
    }

    /// Closed-form determinant of the block's exponent matrix:
    /// a for Fermat, ∏aᵢ for a chain, ∏aᵢ + (−1)^{k+1} for a k-loop.
    pub fn expected_det(&self) -> BigInt {
        match self {
            Block::Fermat(a) => BigInt::from(*a),
            Block::Chain(a) => a.iter().map(|&v| BigInt::from(v)).product(),
            Block::Loop(a) => {
                let product: BigInt = a.iter().map(|&v| BigInt::from(v)).product();
                let corner = if a.len() % 2 == 0 { -BigInt::one() } else { BigInt::one() };
                product + corner
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Block::Fermat(a) => format!("fermat{a}"),
            Block::Chain(a) => format!("chain{}", join_exponents(a)),
            Block::Loop(a) => format!("loop{}", join_exponents(a)),
        }
    }

    /// Block-local exponent rows; row i is the monomial with its power on
    /// variable i (plus the linking variable for chains and loops).
    fn rows(&self) -> Vec<Vec<BigInt>> {
        let k = self.arity();
        let mut rows = vec![vec![BigInt::ZERO; k]; k];
        match self {
            Block::Fermat(a) => rows[0][0] = BigInt::from(*a),
            Block::Chain(a) => {
                for (i, &v) in a.iter().enumerate() {
                    rows[i][i] = BigInt::from(v);
                    if i + 1 < k {
                        rows[i][i + 1] = BigInt::one();
                    }
                }
            }
            Block::Loop(a) => {
                for (i, &v) in a.iter().enumerate() {
                    rows[i][i] = BigInt::from(v);
                    rows[i][(i + 1) % k] = BigInt::one();
                }
            }
        }
        rows
    }

    fn sort_key(&self) -> (usize, u8, &[u32]) {
        match self {
            Block::Chain(a) => (usize::MAX - a.len(), 0, a),
            Block::Fermat(a) => (usize::MAX - 1, 1, std::slice::from_ref(a)),
            Block::Loop(a) => (usize::MAX - a.len(), 2, a),
        }
    }
}

// Blocks order by arity descending, then kind name, then exponents — the
// display order of direct summands and the multiset-canonical order.
impl Ord for Block {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn join_exponents(a: &[u32]) -> String {
    a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("_")
}

/// Is `a` the lexicographically smallest among its rotations? Loops whose
/// exponent sequences differ by a rotation are the same polynomial up to
/// renaming variables, so only the canonical rotation is emitted.
fn is_canonical_rotation(a: &[u32]) -> bool {
    (1..a.len()).all(|r| {
        let rotated: Vec<u32> = a[r..].iter().chain(&a[..r]).copied().collect();
        a <= rotated.as_slice()
    })
}

/// Enumeration bounds: blocks use at most `max_vars` variables in total,
/// every exponent is ≤ `max_exponent`, and entries with det E > `max_det`
/// are dropped.
#[derive(Clone, Copy, Debug)]
pub struct CorpusParams {
    pub max_vars: usize,
    pub max_exponent: u32,
    pub max_det: u64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams { max_vars: 3, max_exponent: 4, max_det: 200 }
    }
}

/// A named corpus member with its validated polynomial.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub blocks: Vec<Block>,
    pub polynomial: InvertiblePolynomial,
}

impl CorpusEntry {
    fn build(blocks: Vec<Block>) -> Result<CorpusEntry> {
        let n: usize = blocks.iter().map(Block::arity).sum();
        let mut e = IntMatrix::zero(n, n);
        let mut offset = 0;
        for block in &blocks {
            for (i, row) in block.rows().into_iter().enumerate() {
                for (j, v) in row.into_iter().enumerate() {
                    *e.at_mut(offset + i, offset + j) = v;
                }
            }
            offset += block.arity();
        }
        let polynomial = InvertiblePolynomial::from_exponent_matrix(e, default_names(n))?;
        let expected: BigInt = blocks.iter().map(Block::expected_det).product();
        assert_eq!(
            polynomial.determinant(),
            &expected,
            "block determinant formula disagrees for {blocks:?}"
        );
        let name = blocks.iter().map(Block::name).collect::<Vec<_>>().join("+");
        Ok(CorpusEntry { name, blocks, polynomial })
    }
}

fn atomic_blocks(params: &CorpusParams) -> Vec<Block> {
    let exps = 2..=params.max_exponent;
    let mut out: Vec<Block> = Vec::new();
    for a in exps.clone() {
        out.push(Block::Fermat(a));
    }
    for k in 2..=params.max_vars {
        for seq in exponent_sequences(k, params.max_exponent) {
            out.push(Block::Chain(seq));
        }
        for seq in exponent_sequences(k, params.max_exponent) {
            if is_canonical_rotation(&seq) {
                out.push(Block::Loop(seq));
            }
        }
    }
    out.sort();
    out
}

fn exponent_sequences(k: usize, max_exponent: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (2..=max_exponent).map(move |a| {
                    let mut next = prefix.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
    }
    out
}

/// Every multiset of atomic blocks within the bounds, exactly once, as
/// validated entries sorted by (variable count, name).
pub fn generate(params: &CorpusParams) -> Vec<CorpusEntry> {
    let atoms = atomic_blocks(params);
    let mut entries = Vec::new();
    let mut selection: Vec<Block> = Vec::new();
    extend(&atoms, 0, params.max_vars, &mut selection, &mut entries);
    let max_det = BigInt::from(params.max_det);
    let mut out: Vec<CorpusEntry> = entries
        .into_iter()
        .map(CorpusEntry::build)
        .collect::<Result<Vec<_>>>()
        .expect("atomic blocks always validate")
        .into_iter()
        .filter(|entry| entry.polynomial.determinant() <= &max_det)
        .collect();
    out.sort_by(|a, b| a.polynomial.n().cmp(&b.polynomial.n()).then_with(|| a.name.cmp(&b.name)));
    out
}

fn extend(
    atoms: &[Block],
    from: usize,
    vars_left: usize,
    selection: &mut Vec<Block>,
    entries: &mut Vec<Vec<Block>>,
) {
    if !selection.is_empty() {
        entries.push(selection.clone());
    }
    for (i, block) in atoms.iter().enumerate().skip(from) {
        if block.arity() <= vars_left {
            selection.push(block.clone());
            extend(atoms, i, vars_left - block.arity(), selection, entries);
            selection.pop();
        }
    }
}
