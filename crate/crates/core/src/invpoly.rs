//! Invertible quasihomogeneous polynomials: the exponent-matrix model,
//! text and matrix parsers, validation, transposition, weights, and the
//! exponential grading vector.
//!
//! A polynomial here is a sum of exactly `n` monomials in `n` variables
//! whose exponent matrix (row i = monomial i) is nonsingular; weights are
//! the unique rational solution of `E·q = (1,…,1)` and must be positive.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlin::{IntMatrix, RationalVector};

/// Sorted set of variable indices (0-based internally; displayed 1-based).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        IndexSet { indices }
    }

    pub fn empty() -> Self {
        IndexSet { indices: Vec::new() }
    }

    /// The full set {0,…,n−1}.
    pub fn all(n: usize) -> Self {
        IndexSet { indices: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.indices.iter()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet { indices: (0..n).filter(|i| !self.contains(*i)).collect() }
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }

    pub fn intersect(&self, other: &IndexSet) -> IndexSet {
        IndexSet { indices: self.indices.iter().copied().filter(|&i| other.contains(i)).collect() }
    }

    /// All 2^n subsets of {0,…,n−1} in bitmask order (∅ first, full set last).
    pub fn power_set(n: usize) -> Vec<IndexSet> {
        assert!(n < usize::BITS as usize);
        (0u64..(1u64 << n))
            .map(|bits| IndexSet::new((0..n).filter(|i| bits >> i & 1 == 1).collect()))
            .collect()
    }
}

impl std::fmt::Display for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Positive quasihomogeneous weights: the unique solution of `E·q = 1⃗`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Weights {
    q: RationalVector,
}

impl Weights {
    pub fn vector(&self) -> &RationalVector {
        &self.q
    }

    pub fn entry(&self, i: usize) -> &BigRational {
        self.q.entry(i)
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }
}

impl std::fmt::Display for Weights {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// Milnor number of a non-degenerate quasihomogeneous singularity with
/// the given weights: ∏_i (1/q_i − 1). Test oracle only.
pub fn milnor_number_oracle(w: &Weights) -> BigRational {
    w.q.iter().map(|q| q.recip() - BigRational::one()).product()
}

/// An invertible polynomial: `n` monomials in `n` variables with
/// nonsingular exponent matrix (normalized to det > 0) and positive weights.
#[derive(Clone, Debug)]
pub struct InvertiblePolynomial {
    e: IntMatrix,
    names: Vec<String>,
    det: BigInt,
    weights: Weights,
}

impl InvertiblePolynomial {
    /// Build and validate from an exponent matrix (rows = monomials) and
    /// per-column variable names. A negative determinant is normalized by
    /// swapping the first two rows; zero determinant, nonpositive weights,
    /// negative entries, and duplicate names are rejected.
    pub fn from_exponent_matrix(e: IntMatrix, names: Vec<String>) -> Result<Self> {
        if !e.is_square() {
            return Err(Error::InvalidPolynomial(format!(
                "need as many monomials as variables: {} monomials, {} variables",
                e.rows(),
                e.cols()
            )));
        }
        let n = e.rows();
        if names.len() != n {
            return Err(Error::InvalidPolynomial(format!(
                "{} variable names for {} columns",
                names.len(),
                n
            )));
        }
        {
            let mut seen = names.clone();
            seen.sort();
            seen.dedup();
            if seen.len() != n {
                return Err(Error::InvalidPolynomial("duplicate variable name".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if e.at(i, j).is_negative() {
                    return Err(Error::InvalidPolynomial(format!(
                        "negative exponent at monomial {}, variable {}",
                        i + 1,
                        names[j]
                    )));
                }
            }
        }
        let mut e = e;
        let mut det = e.determinant()?;
        if det.is_zero() {
            return Err(Error::InvalidPolynomial("exponent matrix is singular".into()));
        }
        if det.is_negative() {
            // Monomial order is semantically irrelevant; fix the orientation.
            let (r0, r1) = (e.row(0), e.row(1));
            for j in 0..n {
                *e.at_mut(0, j) = r1[j].clone();
                *e.at_mut(1, j) = r0[j].clone();
            }
            det = -det;
        }
        let ones = RationalVector::from_integers(&vec![1; n]);
        let q = e.solve_exact(&ones)?;
        for (j, qj) in q.iter().enumerate() {
            if !qj.is_positive() {
                return Err(Error::InvalidPolynomial(format!(
                    "weight of {} is {}, not positive",
                    names[j], qj
                )));
            }
        }
        Ok(InvertiblePolynomial { e, names, det, weights: Weights { q } })
    }

    /// Parse polynomial text (see the grammar in the crate docs). Returns
    /// the polynomial together with warnings for dropped unit coefficients.
    pub fn parse(text: &str) -> Result<(Self, Vec<String>)> {
        let monomials = parse_monomials(text)?;
        let mut warnings = Vec::new();
        let mut names: Vec<String> = Vec::new();
        let mut rows: Vec<BTreeMap<usize, BigInt>> = Vec::new();
        for (idx, mono) in monomials.iter().enumerate() {
            if let Some(c) = &mono.coefficient {
                if c.is_zero() {
                    return Err(Error::InvalidPolynomial(format!(
                        "zero coefficient on monomial {}",
                        idx + 1
                    )));
                }
                if !c.is_one() {
                    warnings.push(format!(
                        "coefficient {} on monomial {} dropped (normalized to 1)",
                        c,
                        idx + 1
                    ));
                }
            }
            let mut row = BTreeMap::new();
            for (var, exp) in &mono.factors {
                let col = match names.iter().position(|v| v == var) {
                    Some(c) => c,
                    None => {
                        names.push(var.clone());
                        names.len() - 1
                    }
                };
                *row.entry(col).or_insert_with(BigInt::zero) += exp;
            }
            rows.push(row);
        }
        let n = names.len();
        if monomials.len() != n {
            return Err(Error::InvalidPolynomial(format!(
                "{} monomials but {} distinct variables",
                monomials.len(),
                n
            )));
        }
        let mut e = IntMatrix::zero(n, n);
        for (i, row) in rows.iter().enumerate() {
            for (&j, v) in row {
                *e.at_mut(i, j) = v.clone();
            }
        }
        let poly = InvertiblePolynomial::from_exponent_matrix(e, names)?;
        Ok((poly, warnings))
    }

    /// Parse matrix text "2,1;0,3" (rows separated by ';', entries by ',').
    /// Variables are named x, y, z, w for n ≤ 4 and x1,…,xn beyond.
    pub fn parse_matrix(text: &str) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|entry| {
                        entry
                            .trim()
                            .parse::<BigInt>()
                            .map_err(|_| Error::Parse(format!("bad matrix entry {entry:?}")))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::Parse(format!(
                "matrix must be square: got {} rows of lengths {:?}",
                rows.len(),
                rows.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        let e = IntMatrix::from_rows(&rows);
        InvertiblePolynomial::from_exponent_matrix(e, default_names(rows.len()))
    }

    pub fn n(&self) -> usize {
        self.e.rows()
    }

    /// Exponent matrix, row i = monomial i. Always det > 0.
    pub fn exponent_matrix(&self) -> &IntMatrix {
        &self.e
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    pub fn determinant(&self) -> &BigInt {
        &self.det
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    /// The Berglund–Hübsch transpose: same variables, exponent matrix E^T.
    pub fn transpose(&self) -> Result<InvertiblePolynomial> {
        InvertiblePolynomial::from_exponent_matrix(self.e.transpose(), self.names.clone()).map_err(
            |e| match e {
                Error::InvalidPolynomial(msg) => {
                    Error::InvalidPolynomial(format!("transpose is not valid: {msg}"))
                }
                other => other,
            },
        )
    }

    /// Coordinates of the exponential grading operator: the weights
    /// reduced mod 1 (so weight 1 becomes 0).
    pub fn grading_vector(&self) -> RationalVector {
        RationalVector::new(
            self.weights
                .q
                .iter()
                .map(|q| q - q.floor())
                .collect(),
        )
    }

    /// How many monomials are supported inside the variable set `i`, and,
    /// when that count equals |i|, the square submatrix E_I (those rows
    /// restricted to the columns of `i`).
    pub fn support_restriction(&self, i: &IndexSet) -> (usize, Option<IntMatrix>) {
        assert!(!i.is_empty(), "index set must be nonempty");
        assert!(i.iter().all(|&v| v < self.n()), "index out of range");
        let rows: Vec<usize> = (0..self.n())
            .filter(|&r| (0..self.n()).all(|c| i.contains(c) || self.e.at(r, c).is_zero()))
            .collect();
        let count = rows.len();
        assert!(
            count <= i.len(),
            "{count} monomials inside a {}-variable space contradicts det ≠ 0",
            i.len()
        );
        if count < i.len() {
            return (count, None);
        }
        let sub_rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|&r| i.iter().map(|&c| self.e.at(r, c).clone()).collect())
            .collect();
        (count, Some(IntMatrix::from_rows(&sub_rows)))
    }
}

/// Semantic equality: same variable set and same multiset of monomials
/// (as name → exponent maps), regardless of row or column layout.
impl PartialEq for InvertiblePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_monomials() == other.canonical_monomials()
    }
}

impl Eq for InvertiblePolynomial {}

impl std::hash::Hash for InvertiblePolynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical_monomials().hash(state);
    }
}

impl InvertiblePolynomial {
    fn canonical_monomials(&self) -> Vec<Vec<(String, BigInt)>> {
        let mut monos: Vec<Vec<(String, BigInt)>> = (0..self.n())
            .map(|i| {
                let mut factors: Vec<(String, BigInt)> = (0..self.n())
                    .filter(|&j| !self.e.at(i, j).is_zero())
                    .map(|j| (self.names[j].clone(), self.e.at(i, j).clone()))
                    .collect();
                factors.sort();
                factors
            })
            .collect();
        monos.sort();
        monos
    }
}

impl std::fmt::Display for InvertiblePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = (0..self.n())
            .map(|i| {
                let factors: Vec<String> = (0..self.n())
                    .filter(|&j| !self.e.at(i, j).is_zero())
                    .map(|j| {
                        if self.e.at(i, j).is_one() {
                            self.names[j].clone()
                        } else {
                            format!("{}^{}", self.names[j], self.e.at(i, j))
                        }
                    })
                    .collect();
                factors.join("*")
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

struct RawMonomial {
    coefficient: Option<BigInt>,
    factors: Vec<(String, BigInt)>,
}

#[derive(PartialEq, Debug)]
enum Token {
    Plus,
    Star,
    Caret,
    Integer(BigInt),
    Ident(String),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Integer(digits.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() => {
                // Identifier: one letter followed by optional digits.
                let mut ident = String::new();
                ident.push(c);
                chars.next();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        ident.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(ident));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(tokens)
}

fn parse_monomials(text: &str) -> Result<Vec<RawMonomial>> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    let mut monomials = Vec::new();
    loop {
        let mono = parse_term(&tokens, &mut pos)?;
        monomials.push(mono);
        match tokens.get(pos) {
            None => break,
            Some(Token::Plus) => {
                pos += 1;
            }
            Some(t) => return Err(Error::Parse(format!("expected '+', found {t:?}"))),
        }
    }
    Ok(monomials)
}

fn parse_term(tokens: &[Token], pos: &mut usize) -> Result<RawMonomial> {
    let mut coefficient = None;
    if let Some(Token::Integer(c)) = tokens.get(*pos) {
        coefficient = Some(c.clone());
        *pos += 1;
        match tokens.get(*pos) {
            Some(Token::Star) => {
                *pos += 1;
            }
            t => return Err(Error::Parse(format!("expected '*' after coefficient, found {t:?}"))),
        }
    }
    let mut factors = Vec::new();
    loop {
        factors.push(parse_factor(tokens, pos)?);
        match tokens.get(*pos) {
            Some(Token::Star) => {
                *pos += 1;
            }
            _ => break,
        }
    }
    Ok(RawMonomial { coefficient, factors })
}

fn parse_factor(tokens: &[Token], pos: &mut usize) -> Result<(String, BigInt)> {
    let name = match tokens.get(*pos) {
        Some(Token::Ident(v)) => v.clone(),
        t => return Err(Error::Parse(format!("expected variable, found {t:?}"))),
    };
    *pos += 1;
    let mut exp = BigInt::one();
    if let Some(Token::Caret) = tokens.get(*pos) {
        *pos += 1;
        match tokens.get(*pos) {
            Some(Token::Integer(k)) if k.is_positive() => {
                exp = k.clone();
                *pos += 1;
            }
            t => return Err(Error::Parse(format!("expected positive exponent, found {t:?}"))),
        }
    }
    Ok((name, exp))
}
