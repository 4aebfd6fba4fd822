//! The Gray map `Z4^n -> Z2^(2n)` and binary codes, possibly non-linear.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::oa::Array;
use crate::z4::{Z4Code, Z4Word};

/// Image pair of each `Z4` symbol: `0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10`.
pub const GRAY_TABLE: [[u8; 2]; 4] = [[0, 0], [0, 1], [1, 1], [1, 0]];

/// Longest binary word (packed into a `u64`).
pub const MAX_BINARY_LENGTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::OutOfRange("binary word contains a symbol other than 0/1".into()));
        }
        if bits.len() > MAX_BINARY_LENGTH {
            return Err(Error::Size(format!("length {} > {MAX_BINARY_LENGTH}", bits.len())));
        }
        Ok(BinaryWord(bits))
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn hamming_weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// First bit most significant.
    pub fn pack(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &b| acc << 1 | b as u64)
    }

    pub fn unpack(w: u64, m: usize) -> Self {
        BinaryWord((0..m).map(|i| (w >> (m - 1 - i) & 1) as u8).collect())
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::OutOfRange(format!("{c:?} is not a bit"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        BinaryWord::new(bits)
    }
}

/// Gray image of a word, symbol pairs concatenated left to right.
pub fn gray(w: &Z4Word) -> BinaryWord {
    BinaryWord(w.symbols().iter().flat_map(|&s| GRAY_TABLE[s as usize]).collect())
}

/// Gray image of a packed `Z4` word as a packed binary word of twice the
/// length: symbol bits `(h, l)` become `(h, h ^ l)`.
#[inline]
pub fn gray_packed(x: u64) -> u64 {
    use crate::z4::packed::{HI, LO};
    let hi = x & HI;
    hi | ((hi >> 1) ^ (x & LO))
}

/// A set of binary words of a fixed length.
#[derive(Clone, Debug)]
pub struct BinaryCode {
    m: usize,
    words: Vec<u64>,
    linear: OnceLock<bool>,
}

impl PartialEq for BinaryCode {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.words == other.words
    }
}

impl Eq for BinaryCode {}

impl BinaryCode {
    /// Builds a code from words of length `m`; repeated words are kept once.
    pub fn new(m: usize, words: &[BinaryWord]) -> Result<Self> {
        if m > MAX_BINARY_LENGTH {
            return Err(Error::Size(format!("length {m} > {MAX_BINARY_LENGTH}")));
        }
        if let Some(w) = words.iter().find(|w| w.len() != m) {
            return Err(Error::Dimension(format!("word {w} has length {}, expected {m}", w.len())));
        }
        Ok(Self::from_packed(m, words.iter().map(BinaryWord::pack).collect()))
    }

    pub fn from_packed(m: usize, mut words: Vec<u64>) -> Self {
        words.sort_unstable();
        words.dedup();
        BinaryCode { m, words, linear: OnceLock::new() }
    }

    pub fn length(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn packed_words(&self) -> &[u64] {
        &self.words
    }

    pub fn words(&self) -> impl Iterator<Item = BinaryWord> + '_ {
        self.words.iter().map(|&w| BinaryWord::unpack(w, self.m))
    }

    pub fn contains_packed(&self, w: u64) -> bool {
        self.words.binary_search(&w).is_ok()
    }

    /// Contains zero and is closed under XOR, by a full pairwise check.
    /// Cached after the first call.
    pub fn is_linear(&self) -> bool {
        *self.linear.get_or_init(|| {
            self.contains_packed(0)
                && self
                    .words
                    .iter()
                    .enumerate()
                    .all(|(i, &u)| self.words[i + 1..].iter().all(|&v| self.contains_packed(u ^ v)))
        })
    }

    pub fn to_array(&self) -> Array {
        Array::new(2, self.m, self.words().map(|w| w.0).collect()).expect("bits are valid array rows")
    }
}

/// `{ gray(w) : w in C }`.
pub fn gray_image(c: &Z4Code) -> BinaryCode {
    BinaryCode::from_packed(2 * c.length(), c.packed_words().iter().map(|&w| gray_packed(w)).collect())
}

pub fn is_linear_binary(d: &BinaryCode) -> bool {
    d.is_linear()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Z4Word {
        s.parse().unwrap()
    }

    fn listing(d: &BinaryCode) -> Vec<String> {
        d.words().map(|w| w.to_string()).collect()
    }

    #[test]
    fn map_table() {
        assert_eq!(gray(&w("2")).to_string(), "11");
        assert_eq!(gray(&w("0123")).to_string(), "00011110");
        assert_eq!(gray(&Z4Word::zero(4)).to_string(), "00000000");
    }

    #[test]
    fn packed_matches_table() {
        for x in 0..256u64 {
            let word = Z4Word::unpack(x, 4);
            assert_eq!(BinaryWord::unpack(gray_packed(x), 8), gray(&word));
        }
    }

    #[test]
    fn images() {
        let c = Z4Code::from_matrix(2, &[w("11")]).unwrap();
        assert_eq!(listing(&gray_image(&c)), ["0000", "0101", "1010", "1111"]);
        let c = Z4Code::from_matrix(2, &[w("20"), w("02")]).unwrap();
        assert_eq!(listing(&gray_image(&c)), ["0000", "0011", "1100", "1111"]);
        let z = Z4Code::zero_code(3).unwrap();
        assert_eq!(listing(&gray_image(&z)), ["000000"]);
    }

    #[test]
    fn linearity() {
        let c = Z4Code::from_matrix(2, &[w("11")]).unwrap();
        assert!(is_linear_binary(&gray_image(&c)));
        let c = Z4Code::from_matrix(2, &[w("10"), w("02")]).unwrap();
        let img = gray_image(&c);
        assert_eq!(listing(&img), ["0000", "0011", "0100", "0111", "1000", "1011", "1100", "1111"]);
        assert!(is_linear_binary(&img));
        let words: Vec<BinaryWord> = ["00", "01", "10"].iter().map(|s| s.parse().unwrap()).collect();
        assert!(!is_linear_binary(&BinaryCode::new(2, &words).unwrap()));
        // 2 (u * v) = 020 is not a codeword, so the image is not closed under XOR
        let c = Z4Code::from_matrix(3, &[w("110"), w("011")]).unwrap();
        assert!(!is_linear_binary(&gray_image(&c)));
    }

    #[test]
    fn parse_errors() {
        assert!("0120".parse::<BinaryWord>().is_err());
        let words: Vec<BinaryWord> = vec!["01".parse().unwrap(), "1".parse().unwrap()];
        assert!(matches!(BinaryCode::new(2, &words), Err(Error::Dimension(_))));
    }
}
