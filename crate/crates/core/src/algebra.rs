//! Finite-dimensional basic algebras over GF(p).
//!
//! Every [`Algebra`] carries a *word basis*: each basis element is a path in
//! its Gabriel quiver (vertex idempotents, arrows, and composites of arrows),
//! and the structure constants express products of basis words in that basis.
//! Monomial bound quiver algebras (Nakayama algebras in particular) arrive this
//! way directly; structure-constant algebras such as endomorphism rings are
//! rebased onto a word basis by [`Algebra::from_constants`].
//!
//! Multiplication convention: for words `u` and `w`, `u * w` means "first `w`,
//! then `u`", so it is nonzero only if `source(u) == target(w)`. The left
//! projective `A e_i` is spanned by the words starting at vertex `i`.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, Weak};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::{Mat, Poly, PrimeField, SpanBuilder};

mod constants;
mod presentation;

pub use constants::{lift_idempotent, ConstantAlgebra};
pub use presentation::{nakayama, AdmissibleSequence, MonomialPresentation, Quiver, Shape};

/// An arrow of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path, recorded in application order: `arrows[0]` is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Word {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Word {
    pub fn vertex(v: usize) -> Self {
        Self {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Sparse structure constants: `entry(i, j)` lists `(k, c)` with
/// `b_i * b_j = sum c * b_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureTable {
    dim: usize,
    entries: Vec<Vec<(u32, u32)>>,
}

impl StructureTable {
    pub fn new(dim: usize, entries: Vec<Vec<(u32, u32)>>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &[(u32, u32)] {
        &self.entries[i * self.dim + j]
    }

    pub fn transposed(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.entries[i * d + j].clone();
            }
        }
        Self { dim: d, entries }
    }

    /// Product of two coefficient vectors.
    pub fn mul(&self, field: PrimeField, x: &[u32], y: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.dim];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = field.mul(a, b);
                for &(k, c) in self.entry(i, j) {
                    let k = k as usize;
                    out[k] = field.add(out[k], field.mul(ab, c));
                }
            }
        }
        out
    }
}

/// A basic finite-dimensional algebra presented on a word basis.
pub struct Algebra {
    field: PrimeField,
    label: String,
    vertices: usize,
    arrows: Vec<Arrow>,
    words: Vec<Word>,
    labels: Vec<String>,
    table: StructureTable,
    kupisch: Option<AdmissibleSequence>,
    /// For a word of positive length: (last arrow, prefix word).
    prefix: Vec<Option<(usize, usize)>>,
    /// words by (source, target), ascending basis index
    blocks: Vec<Vec<usize>>,
    vertex_words: Vec<usize>,
    arrow_words: Vec<usize>,
    fingerprint: u64,
    opposite: OnceLock<Arc<Algebra>>,
    origin: Option<Weak<Algebra>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("label", &self.label)
            .field("dim", &self.dim())
            .field("vertices", &self.vertices)
            .field("arrows", &self.arrows.len())
            .finish()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.field == other.field
            && self.vertices == other.vertices
            && self.arrows == other.arrows
            && self.words == other.words
            && self.table == other.table
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Assembles an algebra from a word basis and structure constants,
    /// validating the unit, the word/prefix coherence and associativity.
    pub fn from_words(
        field: PrimeField,
        label: impl Into<String>,
        vertices: usize,
        arrows: Vec<Arrow>,
        words: Vec<Word>,
        table: StructureTable,
        kupisch: Option<AdmissibleSequence>,
    ) -> Result<Self> {
        let dim = words.len();
        if table.dim() != dim {
            return Err(Error::InvalidAlgebra(format!(
                "table dimension {} vs {} words",
                table.dim(),
                dim
            )));
        }
        for a in &arrows {
            if a.source >= vertices || a.target >= vertices {
                return Err(Error::InvalidQuiver(format!("arrow {} out of range", a.name)));
            }
        }
        let mut index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            if w.source >= vertices || w.target >= vertices {
                return Err(Error::InvalidAlgebra(format!("word {i} has a bad endpoint")));
            }
            if index.insert((w.source, w.arrows.clone()), i).is_some() {
                return Err(Error::InvalidAlgebra(format!("duplicate word {i}")));
            }
        }
        let mut vertex_words = vec![usize::MAX; vertices];
        for (i, w) in words.iter().enumerate() {
            if w.is_empty() {
                vertex_words[w.source] = i;
            }
        }
        if vertex_words.contains(&usize::MAX) {
            return Err(Error::InvalidAlgebra("missing vertex idempotent".into()));
        }
        let mut arrow_words = Vec::with_capacity(arrows.len());
        for (a, arrow) in arrows.iter().enumerate() {
            let Some(&i) = index.get(&(arrow.source, vec![a])) else {
                return Err(Error::InvalidAlgebra(format!(
                    "arrow {} is not a basis word",
                    arrow.name
                )));
            };
            arrow_words.push(i);
        }
        let mut prefix = vec![None; dim];
        for (i, w) in words.iter().enumerate() {
            if let Some((&last, init)) = w.arrows.split_last() {
                let Some(&p) = index.get(&(w.source, init.to_vec())) else {
                    return Err(Error::InvalidAlgebra(format!("prefix of word {i} is not a basis word")));
                };
                prefix[i] = Some((last, p));
                let expect = [(i as u32, 1u32)];
                if table.entry(arrow_words[last], p) != expect {
                    return Err(Error::InvalidAlgebra(format!(
                        "word {i} is not the product of its last arrow and prefix"
                    )));
                }
                if arrows[last].source != words[p].target || arrows[last].target != w.target {
                    return Err(Error::InvalidAlgebra(format!("word {i} is not composable")));
                }
            }
        }
        let mut blocks = vec![Vec::new(); vertices * vertices];
        for (i, w) in words.iter().enumerate() {
            blocks[w.source * vertices + w.target].push(i);
        }
        let labels = words.iter().map(|w| word_label(&arrows, w)).collect::<Vec<_>>();
        let mut hasher = DefaultHasher::new();
        (field, vertices, &arrows, &words, &table).hash(&mut hasher);
        let fingerprint = hasher.finish();
        let alg = Self {
            field,
            label: label.into(),
            vertices,
            arrows,
            words,
            labels,
            table,
            kupisch,
            prefix,
            blocks,
            vertex_words,
            arrow_words,
            fingerprint,
            opposite: OnceLock::new(),
            origin: None,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        // homogeneity and unit
        for i in 0..d {
            for j in 0..d {
                let composable = self.words[i].source == self.words[j].target;
                for &(k, c) in self.table.entry(i, j) {
                    let wk = &self.words[k as usize];
                    if c == 0 || c >= self.field.characteristic() {
                        return Err(Error::InvalidAlgebra("unreduced structure constant".into()));
                    }
                    if !composable || wk.source != self.words[j].source || wk.target != self.words[i].target {
                        return Err(Error::InvalidAlgebra(format!(
                            "product of words {i} and {j} leaves its idempotent block"
                        )));
                    }
                }
            }
        }
        for (i, w) in self.words.iter().enumerate() {
            let left = self.table.entry(self.vertex_words[w.target], i);
            let right = self.table.entry(i, self.vertex_words[w.source]);
            let expect = [(i as u32, 1u32)];
            if left != expect || right != expect {
                return Err(Error::InvalidAlgebra(format!(
                    "vertex idempotents do not act as identity on word {i}"
                )));
            }
        }
        self.check_associativity()
    }

    /// Checks (xy)z = x(yz); exhaustive over composable basis triples up to
    /// dimension 300, and on a fixed pseudo-random sample beyond.
    fn check_associativity(&self) -> Result<()> {
        let d = self.dim();
        let f = self.field;
        let check = |i: usize, j: usize, k: usize| -> Result<()> {
            let left = self.table.mul(f, &self.mul_basis(i, j), &unit_vec(d, k));
            let right = self.table.mul(f, &unit_vec(d, i), &self.mul_basis(j, k));
            if left != right {
                return Err(Error::InvalidAlgebra(format!("not associative on ({i}, {j}, {k})")));
            }
            Ok(())
        };
        if d <= 300 {
            for i in 0..d {
                for j in 0..d {
                    if self.words[i].source != self.words[j].target {
                        continue;
                    }
                    for k in 0..d {
                        if self.words[j].source == self.words[k].target {
                            check(i, j, k)?;
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xa550c);
            for _ in 0..200_000 {
                check(rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))?;
            }
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn kupisch(&self) -> Option<&AdmissibleSequence> {
        self.kupisch.as_ref()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Basis index of the idempotent at vertex `v`.
    pub fn vertex_word(&self, v: usize) -> usize {
        self.vertex_words[v]
    }

    /// Basis index of arrow `a`.
    pub fn arrow_word(&self, a: usize) -> usize {
        self.arrow_words[a]
    }

    /// Basis indices of the generators (the arrows).
    pub fn generators(&self) -> &[usize] {
        &self.arrow_words
    }

    pub fn prefix(&self, word: usize) -> Option<(usize, usize)> {
        self.prefix[word]
    }

    /// Words from `source` to `target` (a basis of `e_target A e_source`).
    pub fn block(&self, source: usize, target: usize) -> &[usize] {
        &self.blocks[source * self.vertices + target]
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        for &(k, c) in self.table.entry(i, j) {
            v[k as usize] = c;
        }
        v
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.table.mul(self.field, x, y)
    }

    pub fn unit(&self) -> Vec<u32> {
        let mut u = vec![0u32; self.dim()];
        for &w in &self.vertex_words {
            u[w] = 1;
        }
        u
    }

    /// The vertex idempotents as coefficient vectors, in vertex order.
    pub fn idempotents(&self) -> Vec<Vec<u32>> {
        self.vertex_words.iter().map(|&w| unit_vec(self.dim(), w)).collect()
    }

    /// The same algebra seen through its structure constants only.
    pub fn constants(&self) -> ConstantAlgebra {
        ConstantAlgebra::from_parts(self.field, self.labels.clone(), self.table.clone(), self.unit())
    }

    /// Jacobson radical via the trace form (needs p > dim).
    pub fn radical(&self) -> Result<Vec<Vec<u32>>> {
        self.constants().radical()
    }

    /// Largest path length in the word basis; `rad^(n+1) = 0` for n this value.
    pub fn loewy_bound(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Cartan matrix: entry (i, j) = dim e_i A e_j.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        (0..self.vertices)
            .map(|i| (0..self.vertices).map(|j| self.block(j, i).len()).collect())
            .collect()
    }

    /// The opposite algebra: words reversed, arrows reversed, structure
    /// constants transposed. Cached; the opposite of the opposite is `self`.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        if let Some(origin) = self.origin.as_ref().and_then(Weak::upgrade) {
            return origin;
        }
        self.opposite
            .get_or_init(|| {
                let mut op = self.build_opposite();
                op.origin = Some(Arc::downgrade(self));
                Arc::new(op)
            })
            .clone()
    }

    /// Opposite algebra without cache links (a structurally fresh copy).
    pub fn build_opposite(&self) -> Algebra {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        let words = self
            .words
            .iter()
            .map(|w| Word {
                source: w.target,
                target: w.source,
                arrows: w.arrows.iter().rev().copied().collect(),
            })
            .collect();
        let kupisch = None;
        let label = match self.label.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.label),
        };
        Algebra::from_words(
            self.field,
            label,
            self.vertices,
            arrows,
            words,
            self.table.transposed(),
            kupisch,
        )
        .expect("opposite of a valid algebra is valid")
    }

    /// True when every vertex has at most one incoming and one outgoing arrow
    /// (a Nakayama quiver); then every indecomposable module is uniserial.
    pub fn is_nakayama(&self) -> bool {
        let mut outd = vec![0; self.vertices];
        let mut ind = vec![0; self.vertices];
        for a in &self.arrows {
            outd[a.source] += 1;
            ind[a.target] += 1;
        }
        outd.iter().chain(&ind).all(|&d| d <= 1)
    }

    /// True when the word basis is closed under concatenation up to zero:
    /// every product of words is 0 or the concatenated word.
    pub fn is_monomial(&self) -> bool {
        let index: std::collections::HashMap<(usize, &[usize]), usize> = self
            .words
            .iter()
            .enumerate()
            .map(|(i, w)| ((w.source, w.arrows.as_slice()), i))
            .collect();
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let entry = self.table.entry(i, j);
                if entry.is_empty() {
                    continue;
                }
                let (u, w) = (&self.words[i], &self.words[j]);
                if u.source != w.target || entry.len() != 1 || entry[0].1 != 1 {
                    return false;
                }
                let mut cat = w.arrows.clone();
                cat.extend_from_slice(&u.arrows);
                if index.get(&(w.source, cat.as_slice())) != Some(&(entry[0].0 as usize)) {
                    return false;
                }
            }
        }
        true
    }

    /// Rebases a basic split structure-constant algebra onto a word basis.
    ///
    /// `idempotents` defaults to [`ConstantAlgebra::primitive_idempotents`].
    /// Also returns the change of basis: column `w` of the matrix is the word
    /// `w` written in the original basis.
    pub fn from_constants(
        ca: &ConstantAlgebra,
        idempotents: Option<Vec<Vec<u32>>>,
        label: impl Into<String>,
    ) -> Result<(Algebra, Mat)> {
        let f = ca.field();
        let d = ca.dim();
        let idems = match idempotents {
            Some(e) => e,
            None => ca.primitive_idempotents()?,
        };
        ca.check_idempotent_system(&idems)?;
        let n = idems.len();
        let rad = ca.radical()?;
        let block = |t: usize, x: &[u32], s: usize| ca.mul(&ca.mul(&idems[t], x), &idems[s]);

        // basic + primitive: e_t A e_s / e_t rad e_s is k for s == t and 0 otherwise
        let mut rad_blocks = vec![SpanBuilder::new(f, d); n * n];
        let mut full_blocks = vec![SpanBuilder::new(f, d); n * n];
        for s in 0..n {
            for t in 0..n {
                for r in &rad {
                    rad_blocks[s * n + t].insert(&block(t, r, s));
                }
                for b in 0..d {
                    full_blocks[s * n + t].insert(&block(t, &unit_vec(d, b), s));
                }
                let gap = full_blocks[s * n + t].dim() - rad_blocks[s * n + t].dim();
                if s == t && gap != 1 {
                    return Err(Error::NonSplitAlgebra(format!(
                        "corner at idempotent {s} has semisimple part of dimension {gap}"
                    )));
                }
                if s != t && gap != 0 {
                    return Err(Error::NonBasicAlgebra(format!("idempotents {s} and {t} are conjugate")));
                }
            }
        }
        // rad^2 blocks from products of composable radical blocks
        let rad_basis: Vec<Vec<Vec<u32>>> = rad_blocks.iter().map(SpanBuilder::basis_rows).collect();
        let mut rad2 = vec![SpanBuilder::new(f, d); n * n];
        for s in 0..n {
            for u in 0..n {
                for t in 0..n {
                    for x in &rad_basis[u * n + t] {
                        for y in &rad_basis[s * n + u] {
                            let xy = ca.mul(x, y);
                            if xy.iter().any(|&c| c != 0) {
                                rad2[s * n + t].insert(&xy);
                            }
                        }
                    }
                }
            }
        }
        let mut arrows = Vec::new();
        let mut arrow_elems = Vec::new();
        for s in 0..n {
            for t in 0..n {
                let mut span = rad2[s * n + t].clone();
                let mut k = 0;
                for v in &rad_basis[s * n + t] {
                    if !span.contains(v) {
                        span.insert(v);
                        arrows.push(Arrow {
                            name: format!("g{s}_{t}_{k}"),
                            source: s,
                            target: t,
                        });
                        arrow_elems.push(v.clone());
                        k += 1;
                    }
                }
            }
        }
        // breadth-first word basis
        let mut words: Vec<Word> = Vec::new();
        let mut elems: Vec<Vec<u32>> = Vec::new();
        let mut spans = vec![SpanBuilder::new(f, d); n * n];
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); n * n];
        for (v, e) in idems.iter().enumerate() {
            spans[v * n + v].insert(e);
            members[v * n + v].push(words.len());
            words.push(Word::vertex(v));
            elems.push(e.clone());
        }
        let mut head = 0;
        while head < words.len() {
            let w = words[head].clone();
            let we = elems[head].clone();
            head += 1;
            for (a, arrow) in arrows.iter().enumerate() {
                if arrow.source != w.target {
                    continue;
                }
                let y = ca.mul(&arrow_elems[a], &we);
                let key = w.source * n + arrow.target;
                if y.iter().all(|&c| c == 0) || spans[key].contains(&y) {
                    continue;
                }
                spans[key].insert(&y);
                members[key].push(words.len());
                let mut arrows_seq = w.arrows.clone();
                arrows_seq.push(a);
                words.push(Word {
                    source: w.source,
                    target: arrow.target,
                    arrows: arrows_seq,
                });
                elems.push(y);
            }
        }
        if words.len() != d {
            return Err(Error::InvalidAlgebra(format!(
                "radical generators span only {} of {} dimensions",
                words.len(),
                d
            )));
        }
        // structure constants in the word basis
        let dw = words.len();
        let mut entries = vec![Vec::new(); dw * dw];
        for i in 0..dw {
            for j in 0..dw {
                if words[i].source != words[j].target {
                    continue;
                }
                let prod = ca.mul(&elems[i], &elems[j]);
                if prod.iter().all(|&c| c == 0) {
                    continue;
                }
                let key = words[j].source * n + words[i].target;
                let coeffs = spans[key]
                    .express(&prod)
                    .ok_or_else(|| Error::InvalidAlgebra("product escapes its idempotent block".into()))?;
                entries[i * dw + j] = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(m, &c)| (members[key][m] as u32, c))
                    .collect();
            }
        }
        let mut change = Mat::zeros(f, d, dw);
        for (w, e) in elems.iter().enumerate() {
            for (r, &c) in e.iter().enumerate() {
                change.set(r, w, c);
            }
        }
        let alg = Algebra::from_words(f, label, n, arrows, words, StructureTable::new(dw, entries), None)?;
        Ok((alg, change))
    }
}

fn word_label(arrows: &[Arrow], w: &Word) -> String {
    if w.arrows.is_empty() {
        return format!("e{}", w.source);
    }
    w.arrows
        .iter()
        .rev()
        .map(|&a| arrows[a].name.as_str())
        .collect::<Vec<_>>()
        .join("*")
}

pub(crate) fn unit_vec(d: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; d];
    v[i] = 1;
    v
}

/// Minimal polynomial of `x` inside an algebra with identity `one`, computed
/// from linear dependence among powers.
pub(crate) fn minimal_polynomial(
    field: PrimeField,
    one: &[u32],
    x: &[u32],
    mul: impl Fn(&[u32], &[u32]) -> Vec<u32>,
) -> Poly {
    let mut span = SpanBuilder::new(field, one.len());
    let mut power = one.to_vec();
    loop {
        if let Some(c) = span.express(&power) {
            let mut coeffs: Vec<u32> = c.iter().map(|&v| field.neg(v)).collect();
            coeffs.push(1);
            return Poly::new(field, coeffs);
        }
        span.insert(&power);
        power = mul(x, &power);
    }
}

/// Evaluates `poly` at `x` by Horner's rule, with `one` as x^0.
pub(crate) fn eval_poly(
    field: PrimeField,
    poly: &Poly,
    one: &[u32],
    x: &[u32],
    mul: impl Fn(&[u32], &[u32]) -> Vec<u32>,
) -> Vec<u32> {
    let mut acc = vec![0u32; one.len()];
    for &c in poly.coeffs().iter().rev() {
        acc = mul(x, &acc);
        for (a, &o) in acc.iter_mut().zip(one) {
            *a = field.add(*a, field.mul(c, o));
        }
    }
    acc
}

/// Splits the identity `one` of some algebra into a nontrivial pair of
/// orthogonal idempotents using a random element of that algebra.
pub(crate) fn split_by_element<R: Rng>(
    field: PrimeField,
    one: &[u32],
    x: &[u32],
    mul: impl Fn(&[u32], &[u32]) -> Vec<u32> + Copy,
    rng: &mut R,
) -> Option<(Vec<u32>, Vec<u32>)> {
    let minpoly = minimal_polynomial(field, one, x, mul);
    let (f1, f2) = minpoly.coprime_split(rng)?;
    let (_, u, _) = f1.ext_gcd(&f2);
    let e1 = eval_poly(field, &u.mul(&f1), one, x, mul);
    let e2: Vec<u32> = one.iter().zip(&e1).map(|(&a, &b)| field.sub(a, b)).collect();
    Some((e1, e2))
}
