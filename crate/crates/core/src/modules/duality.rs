//! The vector-space dual D = Hom_k(-, k), the projective dual (-)* =
//! Hom_A(-, A), the transpose, and the evaluation map M -> M**.

use super::hom::{coordinates, hom};
use super::{Module, ModuleMap};
use crate::error::{Error, Result};
use crate::exactfield::{Mat, SpanBuilder};

/// D M over the opposite algebra: same vertex spaces, transposed arrows.
pub fn dual(m: &Module) -> Module {
    let op = m.algebra().opposite();
    let arrows = m.arrows().iter().map(Mat::transpose).collect();
    Module::from_parts(op, m.dims().to_vec(), arrows, format!("D{}", m.label()))
}

/// D f: D N -> D M for f: M -> N.
pub fn dual_map(f: &ModuleMap) -> ModuleMap {
    let blocks = f.blocks().iter().map(Mat::transpose).collect();
    ModuleMap::from_blocks(dual(f.target()), dual(f.source()), blocks)
}

/// Right multiplication by the arrow `a: s -> t`, as a map P_t -> P_s.
fn right_mult(m: &Module, projs: &[Module], a: usize) -> ModuleMap {
    let alg = m.algebra();
    let f = m.field();
    let arrow = &alg.arrows()[a];
    let (s, t) = (arrow.source, arrow.target);
    let g = alg.arrow_word(a);
    let blocks = (0..alg.vertex_count())
        .map(|w| {
            let src = alg.block(t, w);
            let tgt = alg.block(s, w);
            let mut blk = Mat::zeros(f, tgt.len(), src.len());
            for (col, &x) in src.iter().enumerate() {
                for &(k, c) in alg.table().entry(x, g) {
                    let row = tgt.binary_search(&(k as usize)).expect("x g starts at s");
                    blk.set(row, col, c);
                }
            }
            blk
        })
        .collect();
    ModuleMap::from_blocks(projs[t].clone(), projs[s].clone(), blocks)
}

/// Bases of Hom(M, P_j) for every vertex j, which are the vertex spaces of M*.
fn star_bases(m: &Module) -> Result<(Vec<Module>, Vec<Vec<ModuleMap>>)> {
    let alg = m.algebra();
    let projs: Vec<Module> = (0..alg.vertex_count()).map(|j| Module::projective(alg, j)).collect();
    let bases = projs.iter().map(|p| hom(m, p)).collect::<Result<Vec<_>>>()?;
    Ok((projs, bases))
}

/// M* = Hom_A(M, A), a module over the opposite algebra. Its space at vertex j
/// is Hom(M, A e_j); the opposite of an arrow g: s -> t acts by post-composition
/// with right multiplication by g.
pub fn star(m: &Module) -> Result<Module> {
    let alg = m.algebra();
    let f = m.field();
    let (projs, bases) = star_bases(m)?;
    let mut arrows = Vec::with_capacity(alg.arrows().len());
    for (a, arrow) in alg.arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let rg = right_mult(m, &projs, a);
        let mut mat = Mat::zeros(f, bases[s].len(), bases[t].len());
        for (b, phi) in bases[t].iter().enumerate() {
            let c = coordinates(&bases[s], &rg.compose(phi))
                .ok_or_else(|| Error::InvalidModule("Hom(M, A) not closed under right multiplication".into()))?;
            for (r, &x) in c.iter().enumerate() {
                mat.set(r, b, x);
            }
        }
        arrows.push(mat);
    }
    let dims = bases.iter().map(Vec::len).collect();
    Ok(Module::from_parts(
        alg.opposite(),
        dims,
        arrows,
        format!("{}*", m.label()),
    ))
}

/// f*: Y* -> X* for f: X -> Y, in the bases used by [`star`].
pub fn star_map(f: &ModuleMap) -> Result<ModuleMap> {
    let (x, y) = (f.source(), f.target());
    let (_, bx) = star_bases(x)?;
    let (_, by) = star_bases(y)?;
    let field = x.field();
    let mut blocks = Vec::new();
    for j in 0..bx.len() {
        let mut blk = Mat::zeros(field, bx[j].len(), by[j].len());
        for (b, phi) in by[j].iter().enumerate() {
            let c = coordinates(&bx[j], &phi.compose(f))
                .ok_or_else(|| Error::InvalidMap("precomposition left Hom(X, A)".into()))?;
            for (r, &v) in c.iter().enumerate() {
                blk.set(r, b, v);
            }
        }
        blocks.push(blk);
    }
    Ok(ModuleMap::from_blocks(star(y)?, star(x)?, blocks))
}

/// Auslander transpose: the cokernel of d1*: P0* -> P1* for a minimal
/// presentation P1 -> P0 -> M -> 0. A module over the opposite algebra.
pub fn transpose(m: &Module) -> Result<Module> {
    let (omega, inc) = super::resolution::syzygy(m);
    let pi = super::resolution::projective_cover(&omega);
    let d1 = inc.compose(&pi);
    let d1s = star_map(&d1)?;
    Ok(d1s.cokernel().0.with_label(format!("Tr{}", m.label())))
}

/// The evaluation map M -> M**, m -> (φ -> φ(m)).
///
/// At vertex j, M**_j = Hom(M*, P^op_j) where P^op_j has basis the opposite
/// words ending at j. The functional ev(m) sends the basis map φ of
/// Hom(M, P_i) = (M*)_i to the coordinates of φ(m) in e_j A e_i, which are
/// exactly the coordinates of an element of (P^op_j)_i.
pub fn biduality_map(m: &Module) -> Result<ModuleMap> {
    let alg = m.algebra();
    let f = m.field();
    let n = alg.vertex_count();
    let ms = star(m)?;
    let mss = star(&ms)?;
    let (_, bases) = star_bases(m)?;
    let (_, bbases) = star_bases(&ms)?;
    let mut blocks = Vec::with_capacity(n);
    for j in 0..n {
        // flattened coordinates of each basis element of Hom(M*, P^op_j)
        let len: usize = (0..n).map(|i| ms.dims()[i] * alg.block(i, j).len()).sum();
        let mut span = SpanBuilder::new(f, len);
        for b in &bbases[j] {
            span.insert(&b.flatten());
        }
        let mut blk = Mat::zeros(f, bbases[j].len(), m.dims()[j]);
        for c in 0..m.dims()[j] {
            // the functional's block at vertex i: (P^op_j)_i x (M*)_i
            let mut flat = Vec::with_capacity(len);
            for i in 0..n {
                // (P_i)_j has the words from i to j, the same set (and order)
                // as the opposite words from j to i spanning (P^op_j)_i
                let words = alg.block(i, j);
                let mut fi = Mat::zeros(f, words.len(), bases[i].len());
                for (b, phi) in bases[i].iter().enumerate() {
                    let img = phi.block(j).col(c);
                    for (r, &v) in img.iter().enumerate() {
                        fi.set(r, b, v);
                    }
                }
                flat.extend_from_slice(fi.data());
            }
            let coords = span
                .express(&flat)
                .ok_or_else(|| Error::InvalidMap("evaluation is not a homomorphism".into()))?;
            for (r, &v) in coords.iter().enumerate() {
                blk.set(r, c, v);
            }
        }
        blocks.push(blk);
    }
    let ev = ModuleMap::from_blocks(m.clone(), mss, blocks);
    debug_assert!(ev.is_homomorphism());
    Ok(ev)
}
