use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hom::hom;
use super::{left_inverse, Module, ModuleMap};
use crate::algebra::{split_by_element, ConstantAlgebra, StructureTable};
use crate::error::{Error, Result};
use crate::exactfield::{Mat, SpanBuilder};

const SPLIT_ATTEMPTS: usize = 64;
const SEED: u64 = 0xdec0;

/// An indecomposable summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn modules(&self) -> Vec<Module> {
        self.summands.iter().map(|s| s.module.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
}

/// End(M) as a structure-constant algebra with product b_i * b_j = b_i after
/// b_j, together with the basis maps.
pub fn endomorphism_algebra(m: &Module) -> Result<(ConstantAlgebra, Vec<ModuleMap>)> {
    let basis = hom(m, m)?;
    let f = m.field();
    let d = basis.len();
    let flat: Vec<Vec<u32>> = basis.iter().map(ModuleMap::flatten).collect();
    let mut span = SpanBuilder::new(f, flat.first().map_or(0, Vec::len));
    for v in &flat {
        span.insert(v);
    }
    let mut entries = Vec::with_capacity(d * d);
    for a in &basis {
        for b in &basis {
            let c = span
                .express(&a.compose(b).flatten())
                .ok_or_else(|| Error::InvalidModule("End(M) is not closed under composition".into()))?;
            entries.push(
                c.iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(k, &x)| (k as u32, x))
                    .collect(),
            );
        }
    }
    let unit = span
        .express(&ModuleMap::identity(m).flatten())
        .ok_or_else(|| Error::InvalidModule("identity missing from End(M)".into()))?;
    let labels = (0..d).map(|i| format!("f{i}")).collect();
    Ok((
        ConstantAlgebra::from_parts(f, labels, StructureTable::new(d, entries), unit),
        basis,
    ))
}

/// Dimension of End(M)/rad End(M), from the trace form of the natural
/// representation (exact whenever p > dim M).
fn top_dimension(m: &Module, basis: &[ModuleMap]) -> Result<usize> {
    let f = m.field();
    if f.characteristic() as usize <= m.dim() {
        return Err(Error::CharacteristicTooSmall {
            p: f.characteristic(),
            dim: m.dim(),
        });
    }
    let d = basis.len();
    let mut gram = Mat::zeros(f, d, d);
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            let t = a.compose(b).blocks().iter().fold(0, |acc, blk| f.add(acc, blk.trace()));
            gram.set(i, j, t);
            gram.set(j, i, t);
        }
    }
    Ok(gram.rank())
}

pub fn is_indecomposable(m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let basis = hom(m, m)?;
    Ok(top_dimension(m, &basis)? == 1)
}

/// Splits M into indecomposable summands by Fitting decomposition along
/// idempotents found from random endomorphisms. Summands come out sorted by
/// dimension vector.
pub fn decompose(m: &Module) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    let id = ModuleMap::identity(m);
    split_rec(m, id.clone(), id, &mut rng, &mut out)?;
    out.sort_by(|a, b| a.module.dims().cmp(b.module.dims()));
    Ok(Decomposition { summands: out })
}

fn split_rec(m: &Module, inc: ModuleMap, proj: ModuleMap, rng: &mut ChaCha8Rng, out: &mut Vec<Summand>) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let basis = hom(m, m)?;
    let top = top_dimension(m, &basis)?;
    if top == 1 {
        out.push(Summand {
            module: m.clone(),
            inclusion: inc,
            projection: proj,
        });
        return Ok(());
    }
    let f = m.field();
    let one = ModuleMap::identity(m).flatten();
    let shape: Vec<(usize, usize)> = m.dims().iter().map(|&d| (d, d)).collect();
    let unflat = |v: &[u32]| -> ModuleMap {
        let mut at = 0;
        let blocks = shape
            .iter()
            .map(|&(r, c)| {
                let b = Mat::from_data(f, r, c, v[at..at + r * c].to_vec());
                at += r * c;
                b
            })
            .collect();
        ModuleMap::from_blocks(m.clone(), m.clone(), blocks)
    };
    let mul = |x: &[u32], y: &[u32]| unflat(x).compose(&unflat(y)).flatten();
    for _ in 0..SPLIT_ATTEMPTS {
        let mut x = vec![0u32; one.len()];
        for b in &basis {
            let c = rng.gen_range(0..f.characteristic());
            for (xi, bi) in x.iter_mut().zip(b.flatten()) {
                *xi = f.add(*xi, f.mul(c, bi));
            }
        }
        let Some((e1, e2)) = split_by_element(f, &one, &x, mul, rng) else {
            continue;
        };
        for e in [e1, e2] {
            let e = unflat(&e);
            let bases: Vec<Mat> = e
                .blocks()
                .iter()
                .map(|b| if b.cols() == 0 { b.clone() } else { b.column_space() })
                .collect();
            let pblocks: Vec<Mat> = bases
                .iter()
                .zip(e.blocks())
                .map(|(b, eb)| left_inverse(b).mul(eb))
                .collect();
            let (sub, sub_inc) = m.submodule(bases, m.label())?;
            let sub_proj = ModuleMap::from_blocks(m.clone(), sub.clone(), pblocks);
            split_rec(&sub, inc.compose(&sub_inc), sub_proj.compose(&proj), rng, out)?;
        }
        return Ok(());
    }
    Err(Error::NonSplitAlgebra(format!(
        "End({}) has a top of dimension {top} that no random element splits",
        m.label()
    )))
}

/// An isomorphism between indecomposable modules, if one exists.
///
/// The non-invertible maps between isomorphic indecomposables form a proper
/// subspace, so some basis map is invertible whenever an isomorphism exists.
pub fn isomorphism(x: &Module, y: &Module) -> Result<Option<ModuleMap>> {
    if x.dims() != y.dims() {
        return Ok(None);
    }
    Ok(hom(x, y)?.into_iter().find(ModuleMap::is_isomorphism))
}

/// Isomorphism of arbitrary modules via Krull-Schmidt.
pub fn is_isomorphic(x: &Module, y: &Module) -> Result<bool> {
    if x.dims() != y.dims() {
        return Ok(false);
    }
    let dx = decompose(x)?.modules();
    let mut dy = decompose(y)?.modules();
    if dx.len() != dy.len() {
        return Ok(false);
    }
    for a in &dx {
        let mut hit = None;
        for (i, b) in dy.iter().enumerate() {
            if isomorphism(a, b)?.is_some() {
                hit = Some(i);
                break;
            }
        }
        match hit {
            Some(i) => {
                dy.swap_remove(i);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// An explicit isomorphism between arbitrary modules, assembled from
/// isomorphisms between matched indecomposable summands.
pub fn find_isomorphism(x: &Module, y: &Module) -> Result<Option<ModuleMap>> {
    if x.dims() != y.dims() {
        return Ok(None);
    }
    if x.is_zero() {
        return Ok(Some(ModuleMap::zero(x, y)));
    }
    let dx = decompose(x)?;
    let dy = decompose(y)?;
    if dx.len() != dy.len() {
        return Ok(None);
    }
    let mut used = vec![false; dy.len()];
    let mut total = ModuleMap::zero(x, y);
    for a in &dx.summands {
        let mut hit = None;
        for (i, b) in dy.summands.iter().enumerate() {
            if used[i] {
                continue;
            }
            if let Some(phi) = isomorphism(&a.module, &b.module)? {
                hit = Some((i, phi));
                break;
            }
        }
        let Some((i, phi)) = hit else {
            return Ok(None);
        };
        used[i] = true;
        let b = &dy.summands[i];
        total = total.add(&b.inclusion.compose(&phi).compose(&a.projection));
    }
    debug_assert!(total.is_isomorphism());
    Ok(Some(total))
}
