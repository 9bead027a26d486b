//! The interface shared by amalgamated products and HNN extensions.

use std::fmt::Debug;
use std::hash::Hash;

use crate::amalgam::{AmalgamGroup, AmalgamWord};
use crate::error::{Error, Result};
use crate::hnn::{HnnGroup, HnnWord};
use crate::witness::Exponents;
use crate::wordspec::{parse_amalgam_word, parse_hnn_word};

/// Outcome of a d-th power test. `exact` is false when infinite groups were
/// only searched inside a window and nothing was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerTest {
    pub is_power: bool,
    pub exact: bool,
}

/// Sorted, deduplicated roots; `exact` says the list is complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet<W> {
    pub roots: Vec<W>,
    pub exact: bool,
}

/// Rejects degrees below 2.
pub fn check_degree(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("d must exceed 1, got {d}")));
    }
    Ok(())
}

/// A group acting on a tree with a computable normal form: lengths, the
/// elliptic/hyperbolic split, powers and witnesses.
pub trait FreeConstruction: Sync {
    type Word: Clone + Debug + Eq + Ord + Hash + Send + Sync;

    fn kind(&self) -> &'static str;
    fn identity(&self) -> Self::Word;
    fn mul(&self, x: &Self::Word, y: &Self::Word) -> Self::Word;
    fn invert(&self, x: &Self::Word) -> Self::Word;
    fn power(&self, x: &Self::Word, d: i64) -> Self::Word;
    /// Syllable length for amalgams, t-length for HNN extensions.
    fn length(&self, x: &Self::Word) -> usize;
    fn is_elliptic(&self, x: &Self::Word) -> bool;
    fn is_dth_power(&self, x: &Self::Word, d: u32) -> Result<PowerTest>;
    fn dth_roots(&self, x: &Self::Word, d: u32, search_bound: usize) -> Result<RootSet<Self::Word>>;
    fn are_conjugate(&self, x: &Self::Word, y: &Self::Word) -> Result<Option<Self::Word>>;
    /// Sorted ball of radius `n` and whether it is exact.
    fn ball(&self, n: usize, cap: usize) -> Result<(Vec<Self::Word>, bool)>;
    /// Witness built from the given exponents.
    fn witness_with(&self, e: Exponents) -> Result<Self::Word>;
    /// Escalating-schedule witness for round `level`.
    fn witness(&self, d: u32, n: u32, level: usize) -> Result<(Self::Word, Exponents)>;
    fn format(&self, x: &Self::Word) -> String;
    /// Normal form of a word specification.
    fn parse_word(&self, text: &str) -> Result<Self::Word>;
    /// `(conjugator, core)` with `x = conjugator * core * conjugator^-1`.
    fn cyclic_form(&self, x: &Self::Word) -> (Self::Word, Self::Word);
    /// "length" or "t-length".
    fn length_name(&self) -> &'static str;
}

impl FreeConstruction for AmalgamGroup {
    type Word = AmalgamWord;

    fn kind(&self) -> &'static str {
        "amalgam"
    }
    fn identity(&self) -> AmalgamWord {
        AmalgamGroup::identity(self)
    }
    fn mul(&self, x: &AmalgamWord, y: &AmalgamWord) -> AmalgamWord {
        AmalgamGroup::mul(self, x, y)
    }
    fn invert(&self, x: &AmalgamWord) -> AmalgamWord {
        AmalgamGroup::invert(self, x)
    }
    fn power(&self, x: &AmalgamWord, d: i64) -> AmalgamWord {
        AmalgamGroup::power(self, x, d)
    }
    fn length(&self, x: &AmalgamWord) -> usize {
        x.len()
    }
    fn is_elliptic(&self, x: &AmalgamWord) -> bool {
        AmalgamGroup::is_elliptic(self, x)
    }
    fn is_dth_power(&self, x: &AmalgamWord, d: u32) -> Result<PowerTest> {
        AmalgamGroup::is_dth_power(self, x, d)
    }
    fn dth_roots(&self, x: &AmalgamWord, d: u32, search_bound: usize) -> Result<RootSet<AmalgamWord>> {
        AmalgamGroup::dth_roots(self, x, d, search_bound)
    }
    fn are_conjugate(&self, x: &AmalgamWord, y: &AmalgamWord) -> Result<Option<AmalgamWord>> {
        AmalgamGroup::are_conjugate(self, x, y)
    }
    fn ball(&self, n: usize, cap: usize) -> Result<(Vec<AmalgamWord>, bool)> {
        AmalgamGroup::ball(self, n, cap)
    }
    fn witness_with(&self, e: Exponents) -> Result<AmalgamWord> {
        Ok(self.witness_word(&self.witness_triple()?, e))
    }
    fn witness(&self, d: u32, n: u32, level: usize) -> Result<(AmalgamWord, Exponents)> {
        self.witness_alpha(d, n, level)
    }
    fn format(&self, x: &AmalgamWord) -> String {
        AmalgamGroup::format(self, x)
    }
    fn parse_word(&self, text: &str) -> Result<AmalgamWord> {
        self.reduce(&parse_amalgam_word(self, text)?)
    }
    fn cyclic_form(&self, x: &AmalgamWord) -> (AmalgamWord, AmalgamWord) {
        let cf = self.cyclically_reduce(x);
        (cf.conjugator, cf.core)
    }
    fn length_name(&self) -> &'static str {
        "length"
    }
}

impl FreeConstruction for HnnGroup {
    type Word = HnnWord;

    fn kind(&self) -> &'static str {
        "hnn"
    }
    fn identity(&self) -> HnnWord {
        HnnGroup::identity(self)
    }
    fn mul(&self, x: &HnnWord, y: &HnnWord) -> HnnWord {
        HnnGroup::mul(self, x, y)
    }
    fn invert(&self, x: &HnnWord) -> HnnWord {
        HnnGroup::invert(self, x)
    }
    fn power(&self, x: &HnnWord, d: i64) -> HnnWord {
        HnnGroup::power(self, x, d)
    }
    fn length(&self, x: &HnnWord) -> usize {
        x.t_length()
    }
    fn is_elliptic(&self, x: &HnnWord) -> bool {
        HnnGroup::is_elliptic(self, x)
    }
    fn is_dth_power(&self, x: &HnnWord, d: u32) -> Result<PowerTest> {
        HnnGroup::is_dth_power(self, x, d)
    }
    fn dth_roots(&self, x: &HnnWord, d: u32, search_bound: usize) -> Result<RootSet<HnnWord>> {
        HnnGroup::dth_roots(self, x, d, search_bound)
    }
    fn are_conjugate(&self, x: &HnnWord, y: &HnnWord) -> Result<Option<HnnWord>> {
        HnnGroup::are_conjugate(self, x, y)
    }
    fn ball(&self, n: usize, cap: usize) -> Result<(Vec<HnnWord>, bool)> {
        HnnGroup::ball(self, n, cap)
    }
    fn witness_with(&self, e: Exponents) -> Result<HnnWord> {
        Ok(self.witness_word(&self.nonascending_witness()?, e))
    }
    fn witness(&self, d: u32, n: u32, level: usize) -> Result<(HnnWord, Exponents)> {
        self.witness_alpha(d, n, level)
    }
    fn format(&self, x: &HnnWord) -> String {
        HnnGroup::format(self, x)
    }
    fn parse_word(&self, text: &str) -> Result<HnnWord> {
        self.reduce(&parse_hnn_word(self, text)?)
    }
    fn cyclic_form(&self, x: &HnnWord) -> (HnnWord, HnnWord) {
        let cf = self.cyclically_reduce(x);
        (cf.conjugator, cf.core)
    }
    fn length_name(&self) -> &'static str {
        "t-length"
    }
}
