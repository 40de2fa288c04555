use super::duality::dual;
use super::hom::hom_dim;
use super::{Module, ModuleMap};
use crate::error::{Error, Result};
use crate::exactfield::Mat;

/// The projective cover P(M) -> M.
pub fn projective_cover(m: &Module) -> ModuleMap {
    let cover = m.cover();
    ModuleMap::from_blocks(cover.module().clone(), m.clone(), cover.projection_blocks().to_vec())
}

/// The first syzygy with its inclusion into the projective cover.
pub fn syzygy(m: &Module) -> (Module, ModuleMap) {
    let cover = m.cover();
    cover
        .module()
        .submodule(cover.kernel_blocks().to_vec(), format!("Ω{}", m.label()))
        .expect("kernel of a module map is a submodule")
}

/// A minimal projective resolution truncated after a fixed number of terms.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution {
    /// P_0, P_1, ...
    pub terms: Vec<Module>,
    /// vertices of the indecomposable summands of each term
    pub tops: Vec<Vec<usize>>,
    /// differentials[i]: P_{i+1} -> P_i
    pub differentials: Vec<ModuleMap>,
    pub augmentation: ModuleMap,
}

/// Minimal projective resolution with terms P_0 .. P_len.
pub fn projective_resolution(m: &Module, len: usize) -> ProjectiveResolution {
    let aug = projective_cover(m);
    let mut terms = vec![aug.source().clone()];
    let mut tops = vec![m.cover().vertices()];
    let mut differentials = Vec::new();
    let mut x = m.clone();
    for _ in 0..len {
        let (omega, inc) = syzygy(&x);
        let pi = projective_cover(&omega);
        tops.push(omega.cover().vertices());
        terms.push(pi.source().clone());
        differentials.push(inc.compose(&pi));
        x = omega;
    }
    ProjectiveResolution {
        terms,
        tops,
        differentials,
        augmentation: aug,
    }
}

/// Matrix of Hom(d, N): Hom(Q, N) -> Hom(P, N) for d: P -> Q between direct
/// sums of indecomposable projectives with the given top vertices. A map
/// out of such a sum is recorded by the images of its tops.
pub(crate) fn induced_on_hom(d: &ModuleMap, p_tops: &[usize], q_tops: &[usize], n: &Module) -> Mat {
    let alg = n.algebra();
    let f = n.field();
    let q = d.target();
    let qoffs = top_offsets(q, q_tops);
    let poffs = top_offsets(d.source(), p_tops);
    let ncols: usize = q_tops.iter().map(|&v| n.dims()[v]).sum();
    let nrows: usize = p_tops.iter().map(|&v| n.dims()[v]).sum();
    let mut out = Mat::zeros(f, nrows, ncols);
    let mut row = 0;
    for (l, &vl) in p_tops.iter().enumerate() {
        // the top of summand l is its vertex idempotent
        let pos = poffs[vl][l]
            + alg
                .block(vl, vl)
                .iter()
                .position(|&w| w == alg.vertex_word(vl))
                .expect("idempotent word");
        let img = d.block(vl).col(pos);
        let mut col = 0;
        for (k, &wk) in q_tops.iter().enumerate() {
            let mut acc = Mat::zeros(f, n.dims()[vl], n.dims()[wk]);
            for (i, &u) in alg.block(wk, vl).iter().enumerate() {
                let c = img[qoffs[vl][k] + i];
                if c != 0 {
                    acc.axpy(c, n.word_action(u));
                }
            }
            out.set_block(row, col, &acc);
            col += n.dims()[wk];
        }
        row += n.dims()[vl];
    }
    out
}

/// offsets[w][k]: start of summand k inside the vertex-w block of a direct
/// sum of projectives built by `direct_sum`.
fn top_offsets(p: &Module, tops: &[usize]) -> Vec<Vec<usize>> {
    let alg = p.algebra();
    (0..alg.vertex_count())
        .map(|w| {
            let mut at = 0;
            tops.iter()
                .map(|&v| {
                    let o = at;
                    at += alg.block(v, w).len();
                    o
                })
                .collect()
        })
        .collect()
}

/// dim Ext^i(M, N) from the cohomology of Hom(P_•, N).
pub fn ext_via_resolution(m: &Module, n: &Module, i: usize) -> Result<usize> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let res = projective_resolution(m, i + 1);
    let hom_p = |k: usize| -> usize { res.tops[k].iter().map(|&v| n.dims()[v]).sum() };
    let rank_d = |k: usize| -> usize {
        // Hom(P_{k-1}, N) -> Hom(P_k, N)
        if k == 0 {
            return 0;
        }
        induced_on_hom(&res.differentials[k - 1], &res.tops[k], &res.tops[k - 1], n).rank()
    };
    Ok(hom_p(i) - rank_d(i + 1) - rank_d(i))
}

/// dim Ext^i(M, N) from dimension shifting along syzygies:
/// dim Ext^1(X, N) = dim Hom(ΩX, N) - dim Hom(P(X), N) + dim Hom(X, N).
pub fn ext(m: &Module, n: &Module, i: usize) -> Result<usize> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    if i == 0 {
        return hom_dim(m, n);
    }
    let mut x = m.clone();
    for _ in 1..i {
        x = syzygy(&x).0;
    }
    let hom_cover: usize = x.cover().vertices().iter().map(|&v| n.dims()[v]).sum();
    let omega = syzygy(&x).0;
    Ok(hom_dim(&omega, n)? + hom_dim(&x, n)? - hom_cover)
}

/// dim Ext^i(M, N) computed over the opposite algebra as Ext^i(DN, DM), which
/// amounts to an injective coresolution of N.
pub fn ext_via_injectives(m: &Module, n: &Module, i: usize) -> Result<usize> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    ext_via_resolution(&dual(n), &dual(m), i)
}
