//! Linear codes over `Z4`: words, Hamming and Lee metrics, enumeration from
//! generator matrices, duals and standard form.
//!
//! Words are packed two bits per symbol into a `u64`, first coordinate in
//! the most significant pair, so numeric order on packed words is
//! lexicographic order on symbols. Lengths up to 32 are supported.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oa::Array;
use crate::ring::{FiniteRing, RingCode};

/// Longest supported word.
pub const MAX_LENGTH: usize = 32;
/// Longest code for which the dual is found by scanning all of `Z4^n`.
pub const MAX_SCAN_LENGTH: usize = 12;
/// Largest enumerated code.
pub const MAX_CODE_SIZE: usize = 1 << 24;

/// Symbol weights for `0, 1, 2, 3`: steps around the 4-cycle.
pub const LEE_SYMBOL_WEIGHT: [usize; 4] = [0, 1, 2, 1];

/// A word over `Z4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Z4Word(Vec<u8>);

impl TryFrom<Vec<u8>> for Z4Word {
    type Error = Error;

    fn try_from(symbols: Vec<u8>) -> Result<Self> {
        Z4Word::new(symbols)
    }
}

impl From<Z4Word> for Vec<u8> {
    fn from(w: Z4Word) -> Self {
        w.0
    }
}

impl Z4Word {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if let Some(&s) = symbols.iter().find(|&&s| s > 3) {
            return Err(Error::OutOfRange(format!("symbol {s} is not in Z4")));
        }
        if symbols.len() > MAX_LENGTH {
            return Err(Error::Size(format!("length {} > {MAX_LENGTH}", symbols.len())));
        }
        Ok(Z4Word(symbols))
    }

    pub fn zero(n: usize) -> Self {
        Z4Word(vec![0; n])
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s == 0)
    }

    pub fn lee_weight(&self) -> usize {
        self.0.iter().map(|&s| LEE_SYMBOL_WEIGHT[s as usize]).sum()
    }

    pub fn hamming_weight(&self) -> usize {
        self.0.iter().filter(|&&s| s != 0).count()
    }

    pub fn pack(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &s| acc << 2 | s as u64)
    }

    pub fn unpack(w: u64, n: usize) -> Self {
        Z4Word((0..n).map(|i| (w >> (2 * (n - 1 - i)) & 3) as u8).collect())
    }

    fn check_len(&self, other: &Z4Word) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!("lengths {} and {}", self.len(), other.len())));
        }
        Ok(())
    }

    pub fn sub(&self, other: &Z4Word) -> Result<Z4Word> {
        self.check_len(other)?;
        Ok(Z4Word(self.0.iter().zip(&other.0).map(|(a, b)| (a + 4 - b) % 4).collect()))
    }

    pub fn add(&self, other: &Z4Word) -> Result<Z4Word> {
        self.check_len(other)?;
        Ok(Z4Word(self.0.iter().zip(&other.0).map(|(a, b)| (a + b) % 4).collect()))
    }

    pub fn scale(&self, r: u8) -> Z4Word {
        Z4Word(self.0.iter().map(|&s| (s * (r % 4)) % 4).collect())
    }

    pub fn dot(&self, other: &Z4Word) -> Result<u8> {
        self.check_len(other)?;
        Ok(self.0.iter().zip(&other.0).fold(0, |acc, (&a, &b)| (acc + a * b) % 4))
    }
}

impl fmt::Display for Z4Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Accepts either a run of digits (`"0123"`) or whitespace-separated digits.
impl FromStr for Z4Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c.to_digit(10) {
                Some(d) if d < 4 => Ok(d as u8),
                _ => Err(Error::OutOfRange(format!("{c:?} is not a Z4 digit"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Z4Word::new(symbols)
    }
}

/// Lee distance `sum_i w_L(u_i - v_i)`.
pub fn lee_distance(u: &Z4Word, v: &Z4Word) -> Result<usize> {
    Ok(u.sub(v)?.lee_weight())
}

pub fn hamming_distance(u: &Z4Word, v: &Z4Word) -> Result<usize> {
    u.check_len(v)?;
    Ok(u.0.iter().zip(&v.0).filter(|(a, b)| a != b).count())
}

/// Bit-parallel arithmetic on packed words.
pub mod packed {
    /// Low bit of every symbol.
    pub const LO: u64 = 0x5555_5555_5555_5555;
    /// High bit of every symbol.
    pub const HI: u64 = 0xAAAA_AAAA_AAAA_AAAA;

    #[inline]
    pub fn add(a: u64, b: u64) -> u64 {
        let lo = (a ^ b) & LO;
        let carry = (a & b & LO) << 1;
        ((a ^ b ^ carry) & HI) | lo
    }

    #[inline]
    pub fn neg(a: u64) -> u64 {
        a ^ ((a & LO) << 1)
    }

    #[inline]
    pub fn sub(a: u64, b: u64) -> u64 {
        add(a, neg(b))
    }

    #[inline]
    pub fn double(a: u64) -> u64 {
        (a & LO) << 1
    }

    #[inline]
    pub fn scale(a: u64, r: u8) -> u64 {
        match r % 4 {
            0 => 0,
            1 => a,
            2 => double(a),
            _ => neg(a),
        }
    }

    #[inline]
    pub fn hamming_weight(a: u64) -> usize {
        ((a | (a >> 1)) & LO).count_ones() as usize
    }

    /// Lee weight equals the number of ones in the Gray image: the image of
    /// a symbol `(h, l)` is `(h, h ^ l)`.
    #[inline]
    pub fn lee_weight(a: u64) -> usize {
        let hi = (a & HI) >> 1;
        (hi.count_ones() + (hi ^ (a & LO)).count_ones()) as usize
    }

    /// Inner product mod 4.
    #[inline]
    pub fn dot(a: u64, b: u64) -> u8 {
        let (a0, a1) = (a & LO, (a & HI) >> 1);
        let (b0, b1) = (b & LO, (b & HI) >> 1);
        let s = (a0 & b0).count_ones() + 2 * ((a1 & b0).count_ones() + (a0 & b1).count_ones());
        (s % 4) as u8
    }
}

/// A `Z4`-linear code with every codeword enumerated. Equality compares
/// the codeword sets, not the generators.
#[derive(Clone, Debug)]
pub struct Z4Code {
    n: usize,
    generators: Vec<Z4Word>,
    words: Vec<u64>,
    type_exponents: (usize, usize),
}

impl PartialEq for Z4Code {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.words == other.words
    }
}

impl Eq for Z4Code {}

impl Z4Code {
    /// The code spanned by the rows of `g`; `n` fixes the length when `g`
    /// has no rows.
    pub fn from_matrix(n: usize, g: &[Z4Word]) -> Result<Self> {
        if n == 0 || n > MAX_LENGTH {
            return Err(Error::Size(format!("code length {n} outside 1..={MAX_LENGTH}")));
        }
        for (i, row) in g.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension(format!("row {i} has length {}, expected {n}", row.len())));
            }
        }
        let mut seen: HashSet<u64> = HashSet::from([0]);
        let mut current = vec![0u64];
        for row in g {
            let r = row.pack();
            let multiples = [r, packed::double(r), packed::neg(r)];
            let mut fresh = Vec::new();
            for &s in &current {
                for &m in &multiples {
                    let w = packed::add(s, m);
                    if seen.insert(w) {
                        fresh.push(w);
                    }
                }
            }
            current.extend(fresh);
            if current.len() > MAX_CODE_SIZE {
                return Err(Error::budget("Z4 code enumeration", current.len() as u128, MAX_CODE_SIZE as u128));
            }
        }
        current.sort_unstable();
        Ok(Self::from_sorted(n, g.to_vec(), current))
    }

    fn from_sorted(n: usize, generators: Vec<Z4Word>, words: Vec<u64>) -> Self {
        let residue: HashSet<u64> = words.iter().map(|&w| w & packed::LO).collect();
        let k1 = residue.len().trailing_zeros() as usize;
        let k2 = words.len().trailing_zeros() as usize - 2 * k1;
        debug_assert!(words.len().is_power_of_two() && residue.len().is_power_of_two());
        Z4Code { n, generators, words, type_exponents: (k1, k2) }
    }

    pub fn from_rows(n: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let g = rows.iter().cloned().map(Z4Word::new).collect::<Result<Vec<_>>>()?;
        Self::from_matrix(n, &g)
    }

    pub fn zero_code(n: usize) -> Result<Self> {
        Self::from_matrix(n, &[])
    }

    pub fn full(n: usize) -> Result<Self> {
        let g: Vec<Z4Word> = (0..n).map(|i| Z4Word((0..n).map(|j| u8::from(i == j)).collect())).collect();
        Self::from_matrix(n, &g)
    }

    /// Reads a code over the ring `Z4` (element ids are residues).
    pub fn from_ring_code(code: &RingCode) -> Result<Self> {
        if code.ring() != &FiniteRing::zn(4)? {
            return Err(Error::Precondition(format!("{} is not Z4", code.ring())));
        }
        let rows: Vec<Vec<u8>> = code.generators().to_vec();
        Self::from_rows(code.length(), &rows)
    }

    pub fn to_ring_code(&self) -> Result<RingCode> {
        let rows: Vec<Vec<u8>> = self.generators.iter().map(|g| g.0.clone()).collect();
        RingCode::from_generators(&FiniteRing::zn(4)?, self.n, &rows)
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn generators(&self) -> &[Z4Word] {
        &self.generators
    }

    /// `(k1, k2)` with `|C| = 4^k1 * 2^k2`; `2^k1` is the size of the
    /// residue code `C mod 2`.
    pub fn type_exponents(&self) -> (usize, usize) {
        self.type_exponents
    }

    pub fn packed_words(&self) -> &[u64] {
        &self.words
    }

    pub fn words(&self) -> impl Iterator<Item = Z4Word> + '_ {
        self.words.iter().map(|&w| Z4Word::unpack(w, self.n))
    }

    pub fn contains(&self, w: &Z4Word) -> bool {
        w.len() == self.n && self.words.binary_search(&w.pack()).is_ok()
    }

    /// Dual code by scanning all of `Z4^n` (`n <= 12`).
    pub fn dual(&self) -> Result<Z4Code> {
        if self.n > MAX_SCAN_LENGTH {
            return Err(Error::budget(
                format!("dual scan over Z4^{}", self.n),
                1u128 << (2 * self.n),
                1u128 << (2 * MAX_SCAN_LENGTH),
            ));
        }
        let gens: Vec<u64> = self.generators.iter().map(Z4Word::pack).collect();
        let words: Vec<u64> = (0..1u64 << (2 * self.n))
            .into_par_iter()
            .filter(|&x| gens.iter().all(|&g| packed::dot(x, g) == 0))
            .collect();
        assert_eq!(words.len() * self.size(), 1usize << (2 * self.n), "|C| * |C^perp| must equal 4^n");
        let generators = self.dual_generators_from(&words)?;
        Ok(Self::from_sorted(self.n, generators, words))
    }

    fn dual_generators_from(&self, words: &[u64]) -> Result<Vec<Z4Word>> {
        // A parity-check matrix spans the dual; use it when it matches.
        let h = self.standard_form().parity_check();
        let spanned = Z4Code::from_matrix(self.n, &h)?;
        assert_eq!(spanned.words, words, "parity-check matrix must span the scanned dual");
        Ok(h)
    }

    /// Dual code from the parity-check matrix of the standard form.
    pub fn dual_via_standard_form(&self) -> Result<Z4Code> {
        Z4Code::from_matrix(self.n, &self.standard_form().parity_check())
    }

    /// Minimum Lee weight of a non-zero word; `2n + 1` for the zero code.
    pub fn min_lee_weight(&self) -> usize {
        self.words[1..].iter().map(|&w| packed::lee_weight(w)).min().unwrap_or(2 * self.n + 1)
    }

    /// Minimum Hamming weight of a non-zero word; `n + 1` for the zero code.
    pub fn min_hamming_weight(&self) -> usize {
        self.words[1..].iter().map(|&w| packed::hamming_weight(w)).min().unwrap_or(self.n + 1)
    }

    pub fn to_array(&self) -> Array {
        let rows = self.words().map(|w| w.0).collect();
        Array::new(4, self.n, rows).expect("Z4 words are valid array rows")
    }

    /// Reduces the generator matrix to `[[I, A, B], [0, 2I, 2C]]` up to a
    /// column permutation.
    pub fn standard_form(&self) -> StandardForm {
        StandardForm::reduce(self.n, &self.generators)
    }
}

/// Standard form `[[I_k1, A, B], [0, 2 I_k2, 2 C]]` of a generator matrix,
/// in permuted coordinates: column `j` of `rows` is column `permutation[j]`
/// of the original code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    pub permutation: Vec<usize>,
    pub rows: Vec<Vec<u8>>,
}

impl StandardForm {
    fn reduce(n: usize, g: &[Z4Word]) -> Self {
        let mut rows: Vec<Vec<u8>> = g.iter().map(|w| w.0.clone()).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        let swap_cols = |rows: &mut Vec<Vec<u8>>, perm: &mut Vec<usize>, a: usize, b: usize| {
            for row in rows.iter_mut() {
                row.swap(a, b);
            }
            perm.swap(a, b);
        };
        let sub_multiple = |rows: &mut Vec<Vec<u8>>, target: usize, src: usize, c: u8| {
            let src = rows[src].clone();
            for (t, v) in rows[target].iter_mut().zip(src) {
                *t = (*t + 4 * 4 - c * v) % 4;
            }
        };
        let mut r = 0;
        // unit pivots
        while let Some((i, j)) = find_pivot(&rows, r, |s| s % 2 == 1) {
            rows.swap(r, i);
            swap_cols(&mut rows, &mut perm, r, j);
            if rows[r][r] == 3 {
                for s in rows[r].iter_mut() {
                    *s = (*s * 3) % 4;
                }
            }
            for i in 0..rows.len() {
                if i != r && rows[i][r] != 0 {
                    let c = rows[i][r];
                    sub_multiple(&mut rows, i, r, c);
                }
            }
            r += 1;
        }
        let k1 = r;
        // remaining rows are even; pivot on 2s
        while let Some((i, j)) = find_pivot(&rows, r, |s| s == 2) {
            rows.swap(r, i);
            swap_cols(&mut rows, &mut perm, r, j);
            for i in 0..rows.len() {
                if i != r && rows[i][r] >= 2 {
                    let c = rows[i][r] / 2;
                    sub_multiple(&mut rows, i, r, c);
                }
            }
            r += 1;
        }
        rows.truncate(r);
        StandardForm { n, k1, k2: r - k1, permutation: perm, rows }
    }

    /// Parity-check matrix `[[-(B^T + C^T A^T), C^T, I], [2 A^T, 2 I, 0]]`,
    /// mapped back to the original coordinates. Its rows span the dual.
    pub fn parity_check(&self) -> Vec<Z4Word> {
        let (k1, k2, n) = (self.k1, self.k2, self.n);
        let m = n - k1 - k2;
        let a = |i: usize, j: usize| self.rows[i][k1 + j] % 2;
        let b = |i: usize, j: usize| self.rows[i][k1 + k2 + j];
        let c = |i: usize, j: usize| self.rows[k1 + i][k1 + k2 + j] / 2;
        let mut h: Vec<Vec<u8>> = Vec::with_capacity(m + k2);
        for j in 0..m {
            let mut row = vec![0u8; n];
            for (i, x) in row[..k1].iter_mut().enumerate() {
                let ca: u32 = (0..k2).map(|l| (c(l, j) * a(i, l)) as u32).sum::<u32>() % 4;
                *x = ((8 - b(i, j) as u32 - ca) % 4) as u8;
            }
            for l in 0..k2 {
                row[k1 + l] = c(l, j);
            }
            row[k1 + k2 + j] = 1;
            h.push(row);
        }
        for l in 0..k2 {
            let mut row = vec![0u8; n];
            for (i, x) in row[..k1].iter_mut().enumerate() {
                *x = 2 * a(i, l);
            }
            row[k1 + l] = 2;
            h.push(row);
        }
        h.into_iter()
            .map(|row| {
                let mut orig = vec![0u8; n];
                for (j, &s) in row.iter().enumerate() {
                    orig[self.permutation[j]] = s;
                }
                Z4Word(orig)
            })
            .collect()
    }
}

fn find_pivot(rows: &[Vec<u8>], r: usize, ok: impl Fn(u8) -> bool) -> Option<(usize, usize)> {
    (r..rows.len()).find_map(|i| (r..rows[i].len()).find(|&j| ok(rows[i][j])).map(|j| (i, j)))
}

/// Generator matrix `[[I, A, B], [0, 2I, 2C]]` from explicit blocks: `a` is
/// `k1 x k2` binary, `b` is `k1 x m` over `Z4`, `c` is `k2 x m` binary.
pub fn standard_form_matrix(
    n: usize,
    k1: usize,
    k2: usize,
    a: &[Vec<u8>],
    b: &[Vec<u8>],
    c: &[Vec<u8>],
) -> Result<Vec<Z4Word>> {
    if k1 + k2 > n {
        return Err(Error::Dimension(format!("k1 + k2 = {} exceeds n = {n}", k1 + k2)));
    }
    let m = n - k1 - k2;
    let mut rows = Vec::with_capacity(k1 + k2);
    for i in 0..k1 {
        let mut row = vec![0u8; n];
        row[i] = 1;
        for l in 0..k2 {
            row[k1 + l] = a[i][l] % 2;
        }
        for j in 0..m {
            row[k1 + k2 + j] = b[i][j] % 4;
        }
        rows.push(Z4Word(row));
    }
    for l in 0..k2 {
        let mut row = vec![0u8; n];
        row[k1 + l] = 2;
        for j in 0..m {
            row[k1 + k2 + j] = 2 * (c[l][j] % 2);
        }
        rows.push(Z4Word(row));
    }
    Ok(rows)
}

/// Random standard-form code of type `(k1, k2)`, deterministic in `seed`.
pub fn random_z4_code(n: usize, k1: usize, k2: usize, seed: u64) -> Result<Z4Code> {
    if n == 0 || k1 + k2 > n {
        return Err(Error::Dimension(format!("invalid shape n = {n}, k1 = {k1}, k2 = {k2}")));
    }
    let m = n - k1 - k2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut block = |r: usize, c: usize, q: u8| -> Vec<Vec<u8>> {
        (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..q)).collect()).collect()
    };
    let a = block(k1, k2, 2);
    let b = block(k1, m, 4);
    let c = block(k2, m, 2);
    let g = standard_form_matrix(n, k1, k2, &a, &b, &c)?;
    let code = Z4Code::from_matrix(n, &g)?;
    assert_eq!(code.size(), (1usize << (2 * k1)) << k2, "standard form type formula");
    Ok(code)
}

/// Number of standard-form matrices of shape `(n, k1, k2)`.
pub fn standard_form_count(n: usize, k1: usize, k2: usize) -> u128 {
    let m = n.saturating_sub(k1 + k2);
    1u128 << (k1 * k2 + 2 * k1 * m + k2 * m)
}

/// The `index`-th standard-form matrix of shape `(n, k1, k2)`, reading the
/// blocks `A`, `B`, `C` row-major from the bits of `index`.
pub fn standard_form_by_index(n: usize, k1: usize, k2: usize, index: u128) -> Result<Vec<Z4Word>> {
    if k1 + k2 > n {
        return Err(Error::Dimension(format!("k1 + k2 = {} exceeds n = {n}", k1 + k2)));
    }
    if index >= standard_form_count(n, k1, k2) {
        return Err(Error::OutOfRange(format!("standard form index {index}")));
    }
    let m = n - k1 - k2;
    let mut rest = index;
    let mut take = |bits: u32| -> u8 {
        let v = (rest & ((1 << bits) - 1)) as u8;
        rest >>= bits;
        v
    };
    let a: Vec<Vec<u8>> = (0..k1).map(|_| (0..k2).map(|_| take(1)).collect()).collect();
    let b: Vec<Vec<u8>> = (0..k1).map(|_| (0..m).map(|_| take(2)).collect()).collect();
    let c: Vec<Vec<u8>> = (0..k2).map(|_| (0..m).map(|_| take(1)).collect()).collect();
    standard_form_matrix(n, k1, k2, &a, &b, &c)
}
