use super::{complement_columns, direct_sum, Module, ModuleMap};
use crate::error::{Error, Result};
use crate::exactfield::Mat;

/// A projective cover P0 -> M, stored without a back-reference to M.
///
/// P0 is the direct sum of the projectives at the vertices of a basis of the
/// top of M. Its basis at vertex `w` lists, top by top, the words from the
/// top's vertex to `w`.
pub struct Cover {
    tops: Vec<(usize, Vec<u32>)>,
    module: Module,
    /// offsets[w][k]: start of top k's words inside P0_w
    offsets: Vec<Vec<usize>>,
    proj: Vec<Mat>,
    kernel: Vec<Mat>,
    /// columns of `kernel` generating the kernel as a module, per vertex
    kernel_tops: Vec<Mat>,
    section: Vec<Mat>,
}

impl Cover {
    pub(crate) fn compute(m: &Module) -> Cover {
        let alg = m.algebra();
        let f = m.field();
        let n = alg.vertex_count();
        let mut tops = Vec::new();
        for v in 0..n {
            let d = m.dims()[v];
            let mut rad = Mat::zeros(f, d, 0);
            for (a, arrow) in alg.arrows().iter().enumerate() {
                if arrow.target == v {
                    rad = rad.hstack(m.arrow(a));
                }
            }
            let rad = if rad.cols() == 0 { rad } else { rad.column_space() };
            let comp = complement_columns(&rad, d);
            for c in 0..comp.cols() {
                tops.push((v, comp.col(c)));
            }
        }
        let parts: Vec<Module> = tops.iter().map(|(v, _)| Module::projective(alg, *v)).collect();
        let module = direct_sum(alg, &parts).with_label(format!("P({})", m.label()));
        let mut offsets = vec![Vec::with_capacity(tops.len()); n];
        let mut proj = Vec::with_capacity(n);
        for (w, offs) in offsets.iter_mut().enumerate() {
            let mut cols = Mat::zeros(f, m.dims()[w], module.dims()[w]);
            let mut at = 0;
            for (v, top) in &tops {
                offs.push(at);
                let topm = Mat::column(f, top);
                for &u in alg.block(*v, w) {
                    let img = m.word_action(u).mul(&topm);
                    cols.set_block(0, at, &img);
                    at += 1;
                }
            }
            proj.push(cols);
        }
        let kernel: Vec<Mat> = proj.iter().map(Mat::kernel_columns).collect();
        let kernel_tops = (0..n)
            .map(|w| {
                let mut rad = Mat::zeros(f, module.dims()[w], 0);
                for (a, arrow) in alg.arrows().iter().enumerate() {
                    if arrow.target == w {
                        rad = rad.hstack(&module.arrow(a).mul(&kernel[arrow.source]));
                    }
                }
                let aug = rad.hstack(&kernel[w]);
                let picks: Vec<usize> = aug
                    .rref()
                    .pivots
                    .iter()
                    .filter(|&&c| c >= rad.cols())
                    .map(|&c| c - rad.cols())
                    .collect();
                kernel[w].select_cols(&picks)
            })
            .collect();
        let section = proj.iter().map(right_inverse).collect();
        Cover {
            tops,
            module,
            offsets,
            proj,
            kernel,
            kernel_tops,
            section,
        }
    }

    /// Vertices of the indecomposable projective summands of P0, in order.
    pub fn vertices(&self) -> Vec<usize> {
        self.tops.iter().map(|(v, _)| *v).collect()
    }

    pub fn tops(&self) -> &[(usize, Vec<u32>)] {
        &self.tops
    }

    /// The projective P0.
    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn offsets(&self, w: usize) -> &[usize] {
        &self.offsets[w]
    }

    pub fn projection_blocks(&self) -> &[Mat] {
        &self.proj
    }

    /// Basis of the kernel (the first syzygy) inside P0, per vertex.
    pub fn kernel_blocks(&self) -> &[Mat] {
        &self.kernel
    }

    pub fn kernel_generators(&self) -> &[Mat] {
        &self.kernel_tops
    }

    /// A linear (not module) section of the projection, per vertex.
    pub fn section_blocks(&self) -> &[Mat] {
        &self.section
    }

    pub fn is_isomorphism(&self) -> bool {
        self.kernel.iter().all(|k| k.cols() == 0)
    }
}

/// S with M * S = I for a matrix of full row rank.
fn right_inverse(m: &Mat) -> Mat {
    let f = m.field();
    let e = m.rref();
    assert_eq!(e.rank, m.rows(), "projection onto the module is surjective");
    let sq = m.select_cols(&e.pivots);
    let inv = sq.inverse().unwrap_or_else(|| Mat::zeros(f, 0, 0));
    let mut s = Mat::zeros(f, m.cols(), m.rows());
    for (i, &c) in e.pivots.iter().enumerate() {
        for j in 0..m.rows() {
            s.set(c, j, inv.get(i, j));
        }
    }
    s
}

/// Hom(P0, N) coordinates: one vector of N at each top vertex, stacked.
fn unknown_offsets(cover: &Cover, n: &Module) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(cover.tops.len());
    let mut at = 0;
    for (v, _) in &cover.tops {
        offs.push(at);
        at += n.dims()[*v];
    }
    (offs, at)
}

/// Linear constraints on the images of the tops: the induced map must kill
/// the generators of the kernel of the cover.
fn constraint_matrix(m: &Module, n: &Module) -> Mat {
    let cover = m.cover();
    let alg = m.algebra();
    let f = m.field();
    let (xoffs, cols) = unknown_offsets(cover, n);
    let mut rows = Vec::new();
    for w in 0..alg.vertex_count() {
        let gens = &cover.kernel_tops[w];
        for g in 0..gens.cols() {
            let kappa = gens.col(g);
            let mut block = Mat::zeros(f, n.dims()[w], cols);
            for (k, (v, _)) in cover.tops.iter().enumerate() {
                let base = cover.offsets[w][k];
                for (i, &u) in alg.block(*v, w).iter().enumerate() {
                    let c = kappa[base + i];
                    if c == 0 {
                        continue;
                    }
                    let act = n.word_action(u);
                    for r in 0..act.rows() {
                        for s in 0..act.cols() {
                            let x = block.get(r, xoffs[k] + s);
                            block.set(r, xoffs[k] + s, f.add(x, f.mul(c, act.get(r, s))));
                        }
                    }
                }
            }
            rows.push(block);
        }
    }
    rows.into_iter().fold(Mat::zeros(f, 0, cols), |acc, b| acc.vstack(&b))
}

/// The map P0 -> N determined by the stacked top images `x`, composed with
/// the section, as a candidate map M -> N.
fn map_from_solution(m: &Module, n: &Module, x: &[u32]) -> ModuleMap {
    let cover = m.cover();
    let alg = m.algebra();
    let f = m.field();
    let (xoffs, _) = unknown_offsets(cover, n);
    let blocks = (0..alg.vertex_count())
        .map(|w| {
            let mut phi = Mat::zeros(f, n.dims()[w], cover.module.dims()[w]);
            for (k, (v, _)) in cover.tops.iter().enumerate() {
                let nk = Mat::column(f, &x[xoffs[k]..xoffs[k] + n.dims()[*v]]);
                for (i, &u) in alg.block(*v, w).iter().enumerate() {
                    phi.set_block(0, cover.offsets[w][k] + i, &n.word_action(u).mul(&nk));
                }
            }
            phi.mul(&cover.section[w])
        })
        .collect();
    ModuleMap::from_blocks(m.clone(), n.clone(), blocks)
}

/// A basis of Hom_A(M, N).
pub fn hom(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let c = constraint_matrix(m, n);
    let sols = c.kernel_basis();
    Ok((0..sols.rows()).map(|r| map_from_solution(m, n, sols.row(r))).collect())
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let c = constraint_matrix(m, n);
    Ok(c.cols() - c.rank())
}

/// Coordinates, in the basis `basis`, of a map; `None` if outside the span.
pub(crate) fn coordinates(basis: &[ModuleMap], f: &ModuleMap) -> Option<Vec<u32>> {
    let field = f.source().field();
    let len = f.flatten().len();
    let mut span = crate::exactfield::SpanBuilder::new(field, len);
    for b in basis {
        span.insert(&b.flatten());
    }
    span.express(&f.flatten())
}
