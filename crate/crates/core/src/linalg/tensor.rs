//! Sparse elements of the tensor powers `V^{⊗m}` of a finite-dimensional space.
//!
//! A tensor of degree `m` over `n` generators is a finite linear combination
//! of words `x_{w_0} ⊗ … ⊗ x_{w_{m-1}}` with letters `0 ≤ w_k < n`. Dense
//! vectors use the big-endian flattening `index(w) = Σ_k w_k · n^(m-1-k)`.

use std::collections::BTreeMap;
use std::fmt;


use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Subspace};

pub type Word = Vec<usize>;

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<F> {
    n: usize,
    degree: usize,
    terms: BTreeMap<Word, F>,
}

/// Flat index of a word in `V^{⊗m}`.
pub fn word_index(word: &[usize], n: usize) -> usize {
    word.iter().fold(0, |acc, &w| acc * n + w)
}

/// Inverse of [`word_index`].
pub fn index_word(mut index: usize, n: usize, degree: usize) -> Word {
    let mut word = vec![0; degree];
    for slot in (0..degree).rev() {
        word[slot] = index % n;
        index /= n;
    }
    word
}

/// `n^m`.
pub fn power_dim(n: usize, degree: usize) -> usize {
    n.pow(degree as u32)
}

impl<F: Field> Tensor<F> {
    pub fn zero(n: usize, degree: usize) -> Self {
        Tensor { n, degree, terms: BTreeMap::new() }
    }

    /// The degree-zero tensor `c`.
    pub fn scalar(n: usize, c: F) -> Self {
        let mut t = Self::zero(n, 0);
        t.add_term(Vec::new(), c);
        t
    }

    pub fn word(n: usize, word: Word) -> Self {
        let mut t = Self::zero(n, word.len());
        t.add_term(word, F::one());
        t
    }

    /// The generator `x_i` as a degree-one tensor.
    pub fn generator(n: usize, i: usize) -> Self {
        Self::word(n, vec![i])
    }

    pub fn from_terms(n: usize, degree: usize, terms: impl IntoIterator<Item = (Word, F)>) -> Result<Self> {
        let mut t = Self::zero(n, degree);
        for (w, c) in terms {
            if w.len() != degree {
                return Err(Error::DimensionMismatch { expected: degree, found: w.len() });
            }
            if let Some(&bad) = w.iter().find(|&&l| l >= n) {
                return Err(Error::OutOfRange { index: bad, limit: n });
            }
            t.add_term(w, c);
        }
        Ok(t)
    }

    pub fn from_dense(n: usize, degree: usize, coeffs: &[F]) -> Self {
        assert_eq!(coeffs.len(), power_dim(n, degree), "dense vector has wrong length");
        let terms =
            coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (index_word(i, n, degree), c.clone()));
        Tensor { n, degree, terms: terms.collect() }
    }

    pub fn to_dense(&self) -> Vec<F> {
        let mut out = vec![F::zero(); power_dim(self.n, self.degree)];
        for (w, c) in &self.terms {
            out[word_index(w, self.n)] = c.clone();
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[usize]) -> F {
        self.terms.get(word).cloned().unwrap_or_else(F::zero)
    }

    /// Adds `c · word`, dropping the term if it cancels.
    pub fn add_term(&mut self, word: Word, c: F) {
        debug_assert_eq!(word.len(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, c);
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        self.assert_same_shape(other);
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v.clone() * c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &F::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-F::one());
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.degree);
        }
        Tensor { n: self.n, degree: self.degree, terms: self.terms.iter().map(|(w, v)| (w.clone(), v.clone() * c.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "tensor factors over different spaces");
        let mut out = Self::zero(self.n, self.degree + other.degree);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, c.clone() * d.clone());
            }
        }
        out
    }

    /// Regards the tensor as living over `new_n ≥ n` generators.
    pub fn widen(&self, new_n: usize) -> Self {
        assert!(new_n >= self.n, "cannot shrink the generator set");
        Tensor { n: new_n, degree: self.degree, terms: self.terms.clone() }
    }

    /// Applies, block by block, a linear map defined on words of length `len`
    /// to slots `start..start+len`, keeping the other slots fixed. The image of
    /// a block word is `f(block)`; all images must share a degree and `n`.
    pub fn map_block(&self, start: usize, len: usize, f: impl Fn(&[usize]) -> Self) -> Result<Self> {
        if start + len > self.degree {
            return Err(Error::OutOfRange { index: start + len, limit: self.degree });
        }
        let mut out: Option<Self> = None;
        let mut cache: BTreeMap<&[usize], Self> = BTreeMap::new();
        for (w, c) in &self.terms {
            let block = &w[start..start + len];
            let image = cache.entry(block).or_insert_with(|| f(block));
            let acc = out.get_or_insert_with(|| Self::zero(image.n, self.degree - len + image.degree));
            if image.n != acc.n || image.degree + self.degree - len != acc.degree {
                return Err(Error::Invariant("block images of different shapes".into()));
            }
            for (iw, ic) in &image.terms {
                let mut nw = Vec::with_capacity(acc.degree);
                nw.extend_from_slice(&w[..start]);
                nw.extend_from_slice(iw);
                nw.extend_from_slice(&w[start + len..]);
                acc.add_term(nw, c.clone() * ic.clone());
            }
        }
        Ok(out.unwrap_or_else(|| Self::zero(self.n, self.degree)))
    }

    /// Like [`map_block`](Self::map_block) but with a known output shape, so
    /// that the zero tensor maps to a zero of the right degree.
    pub fn map_block_into(&self, start: usize, len: usize, out_n: usize, out_block_degree: usize, f: impl Fn(&[usize]) -> Self) -> Result<Self> {
        let out = self.map_block(start, len, f)?;
        if out.is_zero() {
            return Ok(Self::zero(out_n, self.degree - len + out_block_degree));
        }
        Ok(out)
    }

    /// Applies the linear map `V → V'` with matrix `m` (row-image convention) at one slot.
    pub fn apply_at_slot(&self, m: &Matrix<F>, slot: usize) -> Result<Self> {
        if slot >= self.degree {
            return Err(Error::OutOfRange { index: slot, limit: self.degree });
        }
        if m.rows() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: m.rows() });
        }
        let out_n = m.cols();
        self.map_block_into(slot, 1, out_n, 1, |b| {
            let row = m.row(b[0]);
            Tensor {
                n: out_n,
                degree: 1,
                terms: row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (vec![j], c.clone())).collect(),
            }
        })
        .map(|t| if t.n == out_n { t } else { t.widen(out_n) })
    }

    /// Applies `m^{⊗len}` to slots `start..start+len`.
    pub fn apply_range(&self, m: &Matrix<F>, start: usize, len: usize) -> Result<Self> {
        if start + len > self.degree {
            return Err(Error::OutOfRange { index: start + len, limit: self.degree });
        }
        let mut t = self.clone();
        for s in start..start + len {
            t = t.apply_at_slot(m, s)?;
        }
        Ok(t)
    }

    /// Applies `m` to every slot.
    pub fn apply_all(&self, m: &Matrix<F>) -> Result<Self> {
        self.apply_range(m, 0, self.degree)
    }

    /// Substitutes, at one slot, the image of each generator under a linear
    /// map `V → V^{⊗k}` (for instance a derivation's values on generators).
    pub fn substitute_at_slot(&self, slot: usize, images: &[Self]) -> Result<Self> {
        if slot >= self.degree {
            return Err(Error::OutOfRange { index: slot, limit: self.degree });
        }
        if images.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: images.len() });
        }
        let (out_n, k) = (images[0].n, images[0].degree);
        self.map_block_into(slot, 1, out_n, k, |b| images[b[0]].clone())
    }

    /// The cyclic move `τ^i`: the first factor is carried to slot `i`,
    /// `(v_0, …, v_{m-1}) ↦ (v_1, …, v_i, v_0, v_{i+1}, …)`.
    pub fn tau_shift(&self, i: usize) -> Result<Self> {
        if self.degree == 0 || i >= self.degree {
            return Err(Error::OutOfRange { index: i, limit: self.degree });
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| {
                let mut nw = Vec::with_capacity(w.len());
                nw.extend_from_slice(&w[1..=i]);
                nw.push(w[0]);
                nw.extend_from_slice(&w[i + 1..]);
                (nw, c.clone())
            })
            .collect();
        Ok(Tensor { n: self.n, degree: self.degree, terms })
    }

    /// The coefficient tensor of `⊗ suffix`: `Σ_w c_{w·suffix} w`.
    pub fn contract_suffix(&self, suffix: &[usize]) -> Self {
        let k = suffix.len();
        assert!(k <= self.degree, "suffix longer than the tensor");
        let mut out = Self::zero(self.n, self.degree - k);
        for (w, c) in &self.terms {
            if &w[self.degree - k..] == suffix {
                out.add_term(w[..self.degree - k].to_vec(), c.clone());
            }
        }
        out
    }

    /// The coefficient tensor of `prefix ⊗`: `Σ_w c_{prefix·w} w`.
    pub fn contract_prefix(&self, prefix: &[usize]) -> Self {
        let k = prefix.len();
        assert!(k <= self.degree, "prefix longer than the tensor");
        let mut out = Self::zero(self.n, self.degree - k);
        for (w, c) in &self.terms {
            if &w[..k] == prefix {
                out.add_term(w[k..].to_vec(), c.clone());
            }
        }
        out
    }

    /// Splits `self = Σ_s T_s ⊗ s` over the distinct suffix words `s` of length `k`.
    pub fn suffix_slices(&self, k: usize) -> BTreeMap<Word, Self> {
        let mut out: BTreeMap<Word, Self> = BTreeMap::new();
        for (w, c) in &self.terms {
            let (head, tail) = w.split_at(self.degree - k);
            out.entry(tail.to_vec()).or_insert_with(|| Self::zero(self.n, self.degree - k)).add_term(head.to_vec(), c.clone());
        }
        out
    }

    /// Splits `self = Σ_p p ⊗ T_p` over the distinct prefix words `p` of length `k`.
    pub fn prefix_slices(&self, k: usize) -> BTreeMap<Word, Self> {
        let mut out: BTreeMap<Word, Self> = BTreeMap::new();
        for (w, c) in &self.terms {
            let (head, tail) = w.split_at(k);
            out.entry(head.to_vec()).or_insert_with(|| Self::zero(self.n, self.degree - k)).add_term(tail.to_vec(), c.clone());
        }
        out
    }

    /// Whether the tensor lies in `V^{⊗start} ⊗ S ⊗ V^{⊗…}` where `S ⊆ V^{⊗k}`
    /// is given together with its annihilator `ann` (see [`Subspace::annihilator`]).
    pub fn lies_in_at(&self, start: usize, ann: &Subspace<F>) -> bool {
        let k = (0..=self.degree).find(|&k| power_dim(self.n, k) == ann.ambient());
        let Some(k) = k.filter(|&k| start + k <= self.degree) else {
            return false;
        };
        let mut acc: BTreeMap<(Word, usize), F> = BTreeMap::new();
        for (w, c) in &self.terms {
            let block = word_index(&w[start..start + k], self.n);
            let mut outer = w[..start].to_vec();
            outer.extend_from_slice(&w[start + k..]);
            for (f, phi) in ann.basis().iter().enumerate() {
                if !phi[block].is_zero() {
                    let e = acc.entry((outer.clone(), f)).or_insert_with(F::zero);
                    *e = e.clone() + c.clone() * phi[block].clone();
                }
            }
        }
        acc.values().all(|v| v.is_zero())
    }

    /// Scalar `c` with `self = c · other`, if one exists (`other` nonzero).
    pub fn ratio_to(&self, other: &Self) -> Option<F> {
        let (w, c) = other.terms.iter().next()?;
        let ratio = self.coeff(w) / c.clone();
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    /// Renders with generator names; `x1, x2, …` when `names` is `None`.
    pub fn display_with(&self, names: Option<&[String]>) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let name = |l: usize| match names {
            Some(ns) if l < ns.len() => ns[l].clone(),
            _ => format!("x{}", l + 1),
        };
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word = w.iter().map(|&l| name(l)).collect::<Vec<_>>().join("⊗");
            if w.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&word);
            } else {
                out.push_str(&format!("{abs}·{word}"));
            }
        }
        out
    }

    fn assert_same_shape(&self, other: &Self) {
        assert_eq!((self.n, self.degree), (other.n, other.degree), "tensors of different shapes");
    }
}

fn is_negative<F: Field>(c: &F) -> bool {
    c.to_string().starts_with('-')
}

impl<F: Field> fmt::Display for Tensor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(None))
    }
}
