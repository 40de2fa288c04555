//! Finite-dimensional left modules and their homological calculus.
//!
//! A module is stored as a representation of the algebra's quiver: one vector
//! space per vertex (the image of the vertex idempotent) and one matrix per
//! arrow. The action of any basis word is the product of arrow matrices along
//! the word. Every module is validated against the algebra's structure
//! constants once, at construction.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactfield::{Mat, PrimeField};

mod cache;
mod decompose;
mod duality;
mod hom;
mod resolution;

pub use cache::{ClassCache, ClassId, Orbit};
pub use decompose::{
    decompose, endomorphism_algebra, find_isomorphism, is_indecomposable, is_isomorphic, isomorphism, Decomposition,
    Summand,
};
pub use duality::{biduality_map, dual, dual_map, star, star_map, transpose};
pub(crate) use hom::coordinates;
pub use hom::{hom, hom_dim, Cover};
pub use resolution::{
    ext, ext_via_injectives, ext_via_resolution, projective_cover, projective_resolution, syzygy, ProjectiveResolution,
};

struct Inner {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    arrows: Vec<Mat>,
    label: String,
    word_actions: OnceLock<Vec<Mat>>,
    cover: OnceLock<Arc<Cover>>,
}

/// A finite-dimensional left module. Cheap to clone; immutable.
#[derive(Clone)]
pub struct Module {
    inner: Arc<Inner>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Module({} {:?} over {})",
            self.label(),
            self.dims(),
            self.algebra().label()
        )
    }
}

/// Equality of the literal data (same algebra, dimensions and arrow
/// matrices), not isomorphism.
impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.dims() == other.dims() && self.arrows() == other.arrows()
    }
}

impl Module {
    /// Builds a module from its vertex dimensions and arrow matrices, checking
    /// that the action respects every product relation of the algebra.
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Mat>, label: impl Into<String>) -> Result<Self> {
        if dims.len() != algebra.vertex_count() {
            return Err(Error::InvalidModule(format!(
                "{} vertex dimensions for {} vertices",
                dims.len(),
                algebra.vertex_count()
            )));
        }
        if arrows.len() != algebra.arrows().len() {
            return Err(Error::InvalidModule("one matrix per arrow required".into()));
        }
        for (a, (arrow, m)) in algebra.arrows().iter().zip(&arrows).enumerate() {
            if m.rows() != dims[arrow.target] || m.cols() != dims[arrow.source] {
                return Err(Error::InvalidModule(format!(
                    "arrow {a} acts by a {}x{} matrix, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[arrow.target],
                    dims[arrow.source]
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::InvalidModule("matrix over the wrong field".into()));
            }
        }
        let m = Self::from_parts(algebra, dims, arrows, label);
        m.check_relations()?;
        Ok(m)
    }

    pub(crate) fn from_parts(
        algebra: Arc<Algebra>,
        dims: Vec<usize>,
        arrows: Vec<Mat>,
        label: impl Into<String>,
    ) -> Self {
        Self {
            inner: Arc::new(Inner {
                algebra,
                dims,
                arrows,
                label: label.into(),
                word_actions: OnceLock::new(),
                cover: OnceLock::new(),
            }),
        }
    }

    /// g * w expands in the structure constants; its action must agree.
    fn check_relations(&self) -> Result<()> {
        let alg = self.algebra();
        let acts = self.word_actions();
        for (a, arrow) in alg.arrows().iter().enumerate() {
            let g = alg.arrow_word(a);
            for (w, word) in alg.words().iter().enumerate() {
                if word.target != arrow.source {
                    continue;
                }
                let lhs = self.inner.arrows[a].mul(&acts[w]);
                let mut rhs = Mat::zeros(self.field(), lhs.rows(), lhs.cols());
                for &(k, c) in alg.table().entry(g, w) {
                    rhs.axpy(c, &acts[k as usize]);
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action violates the relation for {} * {}",
                        alg.basis_labels()[g],
                        alg.basis_labels()[w]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds a module from full action matrices (dim x dim) of the vertex
    /// idempotents and the arrows, in any basis. The result is expressed in a
    /// basis adapted to the idempotents.
    pub fn from_action_matrices(
        algebra: Arc<Algebra>,
        idempotents: &[Mat],
        arrows: &[Mat],
        label: impl Into<String>,
    ) -> Result<Self> {
        let f = algebra.field();
        let n = algebra.vertex_count();
        if idempotents.len() != n || arrows.len() != algebra.arrows().len() {
            return Err(Error::InvalidModule("wrong number of action matrices".into()));
        }
        let dim = idempotents.first().map_or(0, Mat::rows);
        let mut sum = Mat::zeros(f, dim, dim);
        for (i, e) in idempotents.iter().enumerate() {
            if e.rows() != dim || e.cols() != dim || e.mul(e) != *e {
                return Err(Error::InvalidModule(format!(
                    "idempotent {i} does not act idempotently"
                )));
            }
            for (j, g) in idempotents.iter().enumerate() {
                if i != j && !e.mul(g).is_zero() {
                    return Err(Error::InvalidModule(format!(
                        "idempotents {i} and {j} are not orthogonal"
                    )));
                }
            }
            sum = sum.add(e);
        }
        if sum != Mat::identity(f, dim) {
            return Err(Error::InvalidModule("idempotents do not sum to the identity".into()));
        }
        let bases: Vec<Mat> = idempotents.iter().map(Mat::column_space).collect();
        let lefts: Vec<Mat> = bases.iter().map(left_inverse).collect();
        let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
        let mut blocks = Vec::new();
        for (a, arrow) in algebra.arrows().iter().enumerate() {
            let m = &arrows[a];
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidModule(format!("arrow {a} has the wrong shape")));
            }
            // the arrow must map e_s M into e_t M and kill the other vertex spaces
            for (v, b) in bases.iter().enumerate() {
                let img = m.mul(b);
                let expect = if v == arrow.source {
                    idempotents[arrow.target].mul(&img)
                } else {
                    Mat::zeros(f, dim, b.cols())
                };
                if img != expect {
                    return Err(Error::InvalidModule(format!(
                        "arrow {a} does not respect the idempotents"
                    )));
                }
            }
            blocks.push(lefts[arrow.target].mul(m).mul(&bases[arrow.source]));
        }
        Self::new(algebra, dims, blocks, label)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.inner.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.inner.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.inner.dims
    }

    pub fn dim(&self) -> usize {
        self.inner.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn with_label(&self, label: impl Into<String>) -> Module {
        Self::from_parts(
            self.algebra().clone(),
            self.dims().to_vec(),
            self.inner.arrows.clone(),
            label,
        )
    }

    /// Matrix of arrow `a` (dims[target] x dims[source]).
    pub fn arrow(&self, a: usize) -> &Mat {
        &self.inner.arrows[a]
    }

    pub fn arrows(&self) -> &[Mat] {
        &self.inner.arrows
    }

    /// Offsets of the vertex blocks in the concatenated basis.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims()
            .iter()
            .map(|d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }

    /// Actions of all basis words: entry `w` maps the source block of `w` to
    /// its target block.
    pub fn word_actions(&self) -> &[Mat] {
        self.inner.word_actions.get_or_init(|| {
            let alg = self.algebra();
            let mut acts: Vec<Option<Mat>> = vec![None; alg.dim()];
            // words are stored after their prefixes only for breadth-first bases,
            // so resolve recursively
            fn resolve(m: &Module, w: usize, acts: &mut Vec<Option<Mat>>) -> Mat {
                if let Some(a) = &acts[w] {
                    return a.clone();
                }
                let alg = m.algebra();
                let word = alg.word(w);
                let a = match alg.prefix(w) {
                    None => Mat::identity(m.field(), m.dims()[word.source]),
                    Some((last, p)) => {
                        let pre = resolve(m, p, acts);
                        m.arrow(last).mul(&pre)
                    }
                };
                acts[w] = Some(a.clone());
                a
            }
            for w in 0..alg.dim() {
                resolve(self, w, &mut acts);
            }
            acts.into_iter().map(Option::unwrap).collect()
        })
    }

    pub fn word_action(&self, w: usize) -> &Mat {
        &self.word_actions()[w]
    }

    /// Full dim x dim matrix by which a basis element of the algebra acts.
    pub fn action_matrix(&self, basis_index: usize) -> Mat {
        let word = self.algebra().word(basis_index);
        let off = self.offsets();
        let mut m = Mat::zeros(self.field(), self.dim(), self.dim());
        m.set_block(off[word.target], off[word.source], self.word_action(basis_index));
        m
    }

    /// Full action matrix of an arbitrary algebra element.
    pub fn element_action(&self, x: &[u32]) -> Mat {
        let mut m = Mat::zeros(self.field(), self.dim(), self.dim());
        for (w, &c) in x.iter().enumerate() {
            if c != 0 {
                m.axpy(c, &self.action_matrix(w));
            }
        }
        m
    }

    pub fn dimension_vector(&self) -> Vec<usize> {
        self.dims().to_vec()
    }

    /// Indecomposable projective A e_v, with basis the words starting at v.
    pub fn projective(algebra: &Arc<Algebra>, v: usize) -> Module {
        let alg = algebra;
        let n = alg.vertex_count();
        let dims: Vec<usize> = (0..n).map(|w| alg.block(v, w).len()).collect();
        let arrows = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let src = alg.block(v, arrow.source);
                let tgt = alg.block(v, arrow.target);
                let mut m = Mat::zeros(alg.field(), tgt.len(), src.len());
                for (col, &u) in src.iter().enumerate() {
                    for &(k, c) in alg.table().entry(alg.arrow_word(a), u) {
                        let row = tgt.binary_search(&(k as usize)).expect("product stays in A e_v");
                        m.set(row, col, c);
                    }
                }
                m
            })
            .collect();
        Self::from_parts(alg.clone(), dims, arrows, format!("P{v}"))
    }

    /// Simple top of the projective at v.
    pub fn simple(algebra: &Arc<Algebra>, v: usize) -> Module {
        let n = algebra.vertex_count();
        let mut dims = vec![0; n];
        dims[v] = 1;
        let arrows = algebra
            .arrows()
            .iter()
            .map(|a| Mat::zeros(algebra.field(), dims[a.target], dims[a.source]))
            .collect();
        Self::from_parts(algebra.clone(), dims, arrows, format!("S{v}"))
    }

    /// Injective hull of the simple at v: the dual of the opposite projective.
    pub fn injective(algebra: &Arc<Algebra>, v: usize) -> Module {
        let op = algebra.opposite();
        dual(&Module::projective(&op, v)).with_label(format!("I{v}"))
    }

    /// The regular left module, as the direct sum of the projectives.
    pub fn regular(algebra: &Arc<Algebra>) -> Module {
        let parts: Vec<Module> = (0..algebra.vertex_count())
            .map(|v| Module::projective(algebra, v))
            .collect();
        direct_sum(algebra, &parts).with_label("A")
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Module {
        direct_sum(algebra, &[]).with_label("0")
    }

    /// Submodule spanned, at each vertex, by the columns of `basis[v]`
    /// (which must be linearly independent and jointly invariant). Returns the
    /// submodule and its inclusion.
    pub fn submodule(&self, basis: Vec<Mat>, label: impl Into<String>) -> Result<(Module, ModuleMap)> {
        let alg = self.algebra();
        if basis.len() != alg.vertex_count() {
            return Err(Error::InvalidModule("one basis per vertex required".into()));
        }
        let lefts: Vec<Mat> = basis.iter().map(left_inverse).collect();
        let mut arrows = Vec::with_capacity(alg.arrows().len());
        for (a, arrow) in alg.arrows().iter().enumerate() {
            let img = self.arrow(a).mul(&basis[arrow.source]);
            let coords = lefts[arrow.target].mul(&img);
            if basis[arrow.target].mul(&coords) != img {
                return Err(Error::InvalidModule(format!(
                    "subspace is not invariant under arrow {a}"
                )));
            }
            arrows.push(coords);
        }
        let dims = basis.iter().map(Mat::cols).collect();
        let sub = Self::from_parts(alg.clone(), dims, arrows, label);
        let inc = ModuleMap::from_blocks(sub.clone(), self.clone(), basis);
        Ok((sub, inc))
    }

    /// Quotient by the submodule spanned by `sub[v]`, with the projection.
    pub fn quotient(&self, sub: &[Mat], label: impl Into<String>) -> Result<(Module, ModuleMap)> {
        let alg = self.algebra();
        let f = self.field();
        let mut comps = Vec::new();
        let mut projs = Vec::new();
        for (v, s) in sub.iter().enumerate() {
            let d = self.dims()[v];
            let s_space = if s.cols() == 0 {
                Mat::zeros(f, d, 0)
            } else {
                s.column_space()
            };
            let comp = complement_columns(&s_space, d);
            // coordinates w.r.t. [S | C]; keep the C part
            let full = s_space.hstack(&comp);
            let inv = full
                .inverse()
                .ok_or_else(|| Error::InvalidModule("dependent submodule basis".into()))?;
            let proj = inv.block(s_space.cols(), 0, comp.cols(), d);
            comps.push(comp);
            projs.push(proj);
        }
        let mut arrows = Vec::new();
        for (a, arrow) in alg.arrows().iter().enumerate() {
            // invariance: image of the sub under the arrow projects to zero
            if sub[arrow.source].cols() > 0 {
                let img = projs[arrow.target].mul(&self.arrow(a).mul(&sub[arrow.source]));
                if !img.is_zero() {
                    return Err(Error::InvalidModule(format!(
                        "subspace is not invariant under arrow {a}"
                    )));
                }
            }
            arrows.push(projs[arrow.target].mul(self.arrow(a)).mul(&comps[arrow.source]));
        }
        let dims = comps.iter().map(Mat::cols).collect();
        let q = Self::from_parts(alg.clone(), dims, arrows, label);
        let pi = ModuleMap::from_blocks(self.clone(), q.clone(), projs);
        Ok((q, pi))
    }

    /// rad^k M = sum over words of length k of their images.
    pub fn radical_power(&self, k: usize) -> Vec<Mat> {
        let alg = self.algebra();
        let f = self.field();
        let mut spans: Vec<Mat> = self.dims().iter().map(|&d| Mat::zeros(f, d, 0)).collect();
        for (w, word) in alg.words().iter().enumerate() {
            if word.len() != k {
                continue;
            }
            let img = self.word_action(w);
            spans[word.target] = spans[word.target].hstack(img);
        }
        if k == 0 {
            return self.dims().iter().map(|&d| Mat::identity(f, d)).collect();
        }
        // words of length >= k are products of length-k words with shorter ones,
        // so the length-k images generate; close up under the arrows
        let mut spans: Vec<Mat> = spans
            .iter()
            .map(|s| if s.cols() == 0 { s.clone() } else { s.column_space() })
            .collect();
        loop {
            let mut changed = false;
            for (a, arrow) in alg.arrows().iter().enumerate() {
                let img = self.arrow(a).mul(&spans[arrow.source]);
                let merged = spans[arrow.target].hstack(&img);
                let cs = if merged.cols() == 0 {
                    merged
                } else {
                    merged.column_space()
                };
                if cs.cols() > spans[arrow.target].cols() {
                    spans[arrow.target] = cs;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        spans
    }

    /// M / rad^k M.
    pub fn radical_quotient(&self, k: usize) -> Result<Module> {
        let rad = self.radical_power(k);
        Ok(self.quotient(&rad, format!("{}/rad^{k}", self.label()))?.0)
    }

    /// Uniserial module with top at vertex `v` and length `len` (for Nakayama
    /// algebras every indecomposable is of this form).
    pub fn uniserial(algebra: &Arc<Algebra>, v: usize, len: usize) -> Result<Module> {
        let p = Module::projective(algebra, v);
        if len == 0 || len > p.dim() {
            return Err(Error::InvalidModule(format!(
                "no uniserial of length {len} with top at {v} (projective has length {})",
                p.dim()
            )));
        }
        Ok(p.radical_quotient(len)?.with_label(format!("M({v},{len})")))
    }

    /// Conjugates the action by an invertible change of basis at each vertex.
    pub fn change_basis(&self, bases: &[Mat]) -> Result<Module> {
        let alg = self.algebra();
        let invs: Vec<Mat> = bases
            .iter()
            .map(|b| {
                b.inverse()
                    .ok_or_else(|| Error::InvalidModule("singular change of basis".into()))
            })
            .collect::<Result<_>>()?;
        let arrows = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| bases[arrow.target].mul(self.arrow(a)).mul(&invs[arrow.source]))
            .collect();
        Ok(Self::from_parts(
            alg.clone(),
            self.dims().to_vec(),
            arrows,
            self.label(),
        ))
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(self.algebra(), other.algebra()) || **self.algebra() == **other.algebra()
    }

    pub fn cover(&self) -> &Arc<Cover> {
        self.inner.cover.get_or_init(|| Arc::new(Cover::compute(self)))
    }

    /// True when the projective cover is an isomorphism.
    pub fn is_projective(&self) -> bool {
        self.cover().is_isomorphism()
    }
}

/// Direct sum with block-diagonal arrow actions.
pub fn direct_sum(algebra: &Arc<Algebra>, parts: &[Module]) -> Module {
    let f = algebra.field();
    let n = algebra.vertex_count();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|m| m.dims()[v]).sum()).collect();
    let arrows = (0..algebra.arrows().len())
        .map(|a| {
            let blocks: Vec<Mat> = parts.iter().map(|m| m.arrow(a).clone()).collect();
            Mat::block_diag(f, &blocks)
        })
        .collect();
    let label = parts.iter().map(Module::label).collect::<Vec<_>>().join("+");
    Module::from_parts(algebra.clone(), dims, arrows, label)
}

/// Inclusions and projections of the parts of a direct sum built by [`direct_sum`].
pub fn direct_sum_maps(sum: &Module, parts: &[Module]) -> (Vec<ModuleMap>, Vec<ModuleMap>) {
    let f = sum.field();
    let n = sum.algebra().vertex_count();
    let mut offs = vec![0usize; n];
    let mut incs = Vec::new();
    let mut projs = Vec::new();
    for part in parts {
        let mut ib = Vec::new();
        let mut pb = Vec::new();
        for v in 0..n {
            let mut inc = Mat::zeros(f, sum.dims()[v], part.dims()[v]);
            inc.set_block(offs[v], 0, &Mat::identity(f, part.dims()[v]));
            pb.push(inc.transpose());
            ib.push(inc);
            offs[v] += part.dims()[v];
        }
        incs.push(ModuleMap::from_blocks(part.clone(), sum.clone(), ib));
        projs.push(ModuleMap::from_blocks(sum.clone(), part.clone(), pb));
    }
    (incs, projs)
}

/// A module homomorphism, stored vertex by vertex.
#[derive(Clone)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    blocks: Vec<Mat>,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ModuleMap({} -> {}, rank {})",
            self.source.label(),
            self.target.label(),
            self.rank()
        )
    }
}

impl PartialEq for ModuleMap {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

impl ModuleMap {
    /// Checked constructor: the blocks must intertwine all arrow actions.
    pub fn new(source: Module, target: Module, blocks: Vec<Mat>) -> Result<Self> {
        if !source.same_algebra(&target) {
            return Err(Error::AlgebraMismatch);
        }
        let n = source.algebra().vertex_count();
        if blocks.len() != n {
            return Err(Error::InvalidMap("one block per vertex required".into()));
        }
        for v in 0..n {
            if blocks[v].rows() != target.dims()[v] || blocks[v].cols() != source.dims()[v] {
                return Err(Error::InvalidMap(format!("block {v} has the wrong shape")));
            }
        }
        let map = Self::from_blocks(source, target, blocks);
        if !map.is_homomorphism() {
            return Err(Error::InvalidMap("blocks do not intertwine the arrow actions".into()));
        }
        Ok(map)
    }

    pub(crate) fn from_blocks(source: Module, target: Module, blocks: Vec<Mat>) -> Self {
        debug_assert_eq!(blocks.len(), source.dims().len());
        Self { source, target, blocks }
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        let f = source.field();
        let blocks = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(&s, &t)| Mat::zeros(f, t, s))
            .collect();
        Self::from_blocks(source.clone(), target.clone(), blocks)
    }

    pub fn identity(m: &Module) -> Self {
        let f = m.field();
        let blocks = m.dims().iter().map(|&d| Mat::identity(f, d)).collect();
        Self::from_blocks(m.clone(), m.clone(), blocks)
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &Mat {
        &self.blocks[v]
    }

    pub fn is_homomorphism(&self) -> bool {
        let alg = self.source.algebra();
        alg.arrows().iter().enumerate().all(|(a, arrow)| {
            self.blocks[arrow.target].mul(self.source.arrow(a)) == self.target.arrow(a).mul(&self.blocks[arrow.source])
        })
    }

    /// self after other.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect();
        Self::from_blocks(other.source.clone(), self.target.clone(), blocks)
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        Self::from_blocks(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect();
        Self::from_blocks(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn scale(&self, s: u32) -> ModuleMap {
        let blocks = self.blocks.iter().map(|a| a.scale(s)).collect();
        Self::from_blocks(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Mat::rank).sum()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dims() == self.target.dims() && self.rank() == self.source.dim()
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                if b.rows() == 0 && b.cols() == 0 {
                    Some(b.clone())
                } else {
                    b.inverse()
                }
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_blocks(self.target.clone(), self.source.clone(), blocks))
    }

    /// Flattened coordinates (row-major blocks concatenated).
    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    /// Kernel as a submodule of the source.
    pub fn kernel(&self) -> (Module, ModuleMap) {
        let basis = self.blocks.iter().map(Mat::kernel_columns).collect();
        self.source
            .submodule(basis, format!("ker({})", self.source.label()))
            .expect("kernels are submodules")
    }

    /// Image as a submodule of the target.
    pub fn image(&self) -> (Module, ModuleMap) {
        let f = self.source.field();
        let basis = self
            .blocks
            .iter()
            .map(|b| {
                if b.cols() == 0 {
                    Mat::zeros(f, b.rows(), 0)
                } else {
                    b.column_space()
                }
            })
            .collect();
        self.target
            .submodule(basis, format!("im({})", self.source.label()))
            .expect("images are submodules")
    }

    pub fn cokernel(&self) -> (Module, ModuleMap) {
        let f = self.source.field();
        let basis: Vec<Mat> = self
            .blocks
            .iter()
            .map(|b| {
                if b.cols() == 0 {
                    Mat::zeros(f, b.rows(), 0)
                } else {
                    b.column_space()
                }
            })
            .collect();
        self.target
            .quotient(&basis, format!("coker({})", self.source.label()))
            .expect("images are submodules")
    }

    /// Block-diagonal matrix on the concatenated bases.
    pub fn to_matrix(&self) -> Mat {
        Mat::block_diag(self.source.field(), &self.blocks)
    }
}

/// Some L with L * b = I (b must have independent columns).
pub(crate) fn left_inverse(b: &Mat) -> Mat {
    let f = b.field();
    if b.cols() == 0 {
        return Mat::zeros(f, 0, b.rows());
    }
    // L = rows of (B^T B)^{-1} B^T would need invertibility over GF(p); instead
    // pick pivot rows: B restricted to its pivot rows is invertible
    let e = b.transpose().rref();
    let rows = &e.pivots;
    assert_eq!(rows.len(), b.cols(), "columns are dependent");
    let sq = b.select_rows(rows);
    let inv = sq.inverse().expect("pivot rows give an invertible block");
    let mut l = Mat::zeros(f, b.cols(), b.rows());
    for (j, &r) in rows.iter().enumerate() {
        for i in 0..b.cols() {
            l.set(i, r, inv.get(i, j));
        }
    }
    l
}

/// Standard basis vectors completing the column space of `s` to GF(p)^d.
pub(crate) fn complement_columns(s: &Mat, d: usize) -> Mat {
    let f = s.field();
    let aug = s.hstack(&Mat::identity(f, d));
    let e = aug.rref();
    let picks: Vec<usize> = e
        .pivots
        .iter()
        .filter(|&&c| c >= s.cols())
        .map(|&c| c - s.cols())
        .collect();
    Mat::identity(f, d).select_cols(&picks)
}

#[cfg(test)]
mod tests;
