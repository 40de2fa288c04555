use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{split_by_element, unit_vec, StructureTable};
use crate::error::{Error, Result};
use crate::exactfield::{Mat, PrimeField, SpanBuilder};

/// A finite-dimensional associative unital algebra given by an arbitrary basis
/// and structure constants. No quiver, no distinguished idempotents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantAlgebra {
    field: PrimeField,
    labels: Vec<String>,
    table: StructureTable,
    unit: Vec<u32>,
}

impl ConstantAlgebra {
    pub(crate) fn from_parts(field: PrimeField, labels: Vec<String>, table: StructureTable, unit: Vec<u32>) -> Self {
        Self {
            field,
            labels,
            table,
            unit,
        }
    }

    /// Builds and validates an algebra from `(i, j, k, c)` triples meaning
    /// `b_i * b_j` has coefficient `c` on `b_k`. Coefficients are reduced mod p
    /// and repeated triples accumulate. The unit is solved for when omitted.
    pub fn new(
        field: PrimeField,
        dim: usize,
        products: &[(usize, usize, usize, i64)],
        unit: Option<Vec<i64>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut dense = vec![vec![0u32; dim]; dim * dim];
        for &(i, j, k, c) in products {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "product index out of range: ({i}, {j}, {k})"
                )));
            }
            let slot = &mut dense[i * dim + j][k];
            *slot = field.add(*slot, field.from_i64(c));
        }
        let entries = dense
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != 0)
                    .map(|(k, c)| (k as u32, c))
                    .collect()
            })
            .collect();
        let table = StructureTable::new(dim, entries);
        let labels = labels.unwrap_or_else(|| (0..dim).map(|i| format!("b{i}")).collect());
        if labels.len() != dim {
            return Err(Error::InvalidAlgebra("label count differs from dimension".into()));
        }
        let unit = match unit {
            Some(u) => {
                if u.len() != dim {
                    return Err(Error::InvalidAlgebra("unit has the wrong length".into()));
                }
                u.into_iter().map(|c| field.from_i64(c)).collect()
            }
            None => solve_unit(field, &table)?,
        };
        let alg = Self {
            field,
            labels,
            table,
            unit,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        for b in 0..d {
            let e = unit_vec(d, b);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::InvalidAlgebra(format!("unit is not two-sided on b{b}")));
            }
        }
        let check = |i: usize, j: usize, k: usize| -> Result<()> {
            let (ei, ej, ek) = (unit_vec(d, i), unit_vec(d, j), unit_vec(d, k));
            if self.mul(&self.mul(&ei, &ej), &ek) != self.mul(&ei, &self.mul(&ej, &ek)) {
                return Err(Error::InvalidAlgebra(format!("not associative on ({i}, {j}, {k})")));
            }
            Ok(())
        };
        if d <= 300 {
            for i in 0..d {
                for j in 0..d {
                    if self.table.entry(i, j).is_empty() {
                        // (b_i b_j) b_k = 0 then; still need b_i (b_j b_k) = 0
                        for k in 0..d {
                            if !self.table.entry(j, k).is_empty() {
                                check(i, j, k)?;
                            }
                        }
                        continue;
                    }
                    for k in 0..d {
                        check(i, j, k)?;
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

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.table.mul(self.field, x, y)
    }

    /// c^op[i][j] = c[j][i]; same basis and unit.
    pub fn opposite(&self) -> Self {
        Self {
            field: self.field,
            labels: self.labels.clone(),
            table: self.table.transposed(),
            unit: self.unit.clone(),
        }
    }

    /// Nonzero `(k, c)` triples, for serialization.
    pub fn triples(&self) -> Vec<(usize, usize, usize, u32)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for &(k, c) in self.table.entry(i, j) {
                    out.push((i, j, k as usize, c));
                }
            }
        }
        out
    }

    /// Basis of the Jacobson radical: the kernel of the trace form
    /// (x, y) -> Tr(L_{xy}). This characterizes the radical once p > dim.
    pub fn radical(&self) -> Result<Vec<Vec<u32>>> {
        let f = self.field;
        let d = self.dim();
        if f.characteristic() as usize <= d {
            return Err(Error::CharacteristicTooSmall {
                p: f.characteristic(),
                dim: d,
            });
        }
        // t_m = Tr(L_{b_m}) = sum_k coefficient of b_k in b_m b_k
        let traces: Vec<u32> = (0..d)
            .map(|m| {
                (0..d).fold(0, |acc, k| {
                    let c = self
                        .table
                        .entry(m, k)
                        .iter()
                        .find(|(kk, _)| *kk as usize == k)
                        .map_or(0, |&(_, c)| c);
                    f.add(acc, c)
                })
            })
            .collect();
        let mut gram = Mat::zeros(f, d, d);
        for i in 0..d {
            for j in 0..d {
                let v = self
                    .table
                    .entry(i, j)
                    .iter()
                    .fold(0, |acc, &(k, c)| f.add(acc, f.mul(c, traces[k as usize])));
                gram.set(i, j, v);
            }
        }
        let k = gram.kernel_basis();
        Ok((0..k.rows()).map(|r| k.row(r).to_vec()).collect())
    }

    /// Checks that the given elements are orthogonal idempotents summing to 1.
    pub fn check_idempotent_system(&self, idems: &[Vec<u32>]) -> Result<()> {
        let d = self.dim();
        let f = self.field;
        let mut sum = vec![0u32; d];
        for (i, e) in idems.iter().enumerate() {
            if e.len() != d {
                return Err(Error::InvalidAlgebra("idempotent has the wrong length".into()));
            }
            for (j, g) in idems.iter().enumerate() {
                let prod = self.mul(e, g);
                let expect = if i == j { e.clone() } else { vec![0; d] };
                if prod != expect {
                    return Err(Error::InvalidAlgebra(format!(
                        "idempotents {i} and {j} fail e_i e_j = delta e_i"
                    )));
                }
            }
            for (s, &c) in sum.iter_mut().zip(e) {
                *s = f.add(*s, c);
            }
        }
        if sum != self.unit {
            return Err(Error::InvalidAlgebra("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    /// Basis of e A e together with the dimension of e rad e.
    fn corner(&self, e: &[u32], rad: &[Vec<u32>]) -> (Vec<Vec<u32>>, usize) {
        let d = self.dim();
        let mut full = SpanBuilder::new(self.field, d);
        for b in 0..d {
            full.insert(&self.mul(&self.mul(e, &unit_vec(d, b)), e));
        }
        let mut r = SpanBuilder::new(self.field, d);
        for x in rad {
            r.insert(&self.mul(&self.mul(e, x), e));
        }
        (full.basis_rows(), r.dim())
    }

    /// A complete set of primitive orthogonal idempotents, ordered by the
    /// first basis index carrying a nonzero coefficient.
    ///
    /// Each corner e A e that is not local is split with a random element x:
    /// a coprime factorization of the minimal polynomial of x yields an exact
    /// idempotent polynomial in x. A corner whose semisimple part stays larger
    /// than the base field after many attempts is reported as non-split.
    pub fn primitive_idempotents(&self) -> Result<Vec<Vec<u32>>> {
        let f = self.field;
        let rad = self.radical()?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x1de4);
        let mut todo = vec![self.unit.clone()];
        let mut done = Vec::new();
        while let Some(e) = todo.pop() {
            let (corner, rad_dim) = self.corner(&e, &rad);
            let top = corner.len() - rad_dim;
            if top == 1 {
                done.push(e);
                continue;
            }
            let mul = |x: &[u32], y: &[u32]| self.mul(x, y);
            let mut split = None;
            for _ in 0..64 {
                let mut x = vec![0u32; self.dim()];
                for b in &corner {
                    let c = rng.gen_range(0..f.characteristic());
                    for (xi, &bi) in x.iter_mut().zip(b) {
                        *xi = f.add(*xi, f.mul(c, bi));
                    }
                }
                if let Some(pair) = split_by_element(f, &e, &x, mul, &mut rng) {
                    split = Some(pair);
                    break;
                }
            }
            let Some((e1, e2)) = split else {
                return Err(Error::NonSplitAlgebra(format!(
                    "a corner with semisimple part of dimension {top} did not split"
                )));
            };
            todo.push(lift_idempotent(self, e1)?);
            todo.push(lift_idempotent(self, e2)?);
        }
        done.sort_by_key(|e| e.iter().position(|&c| c != 0).unwrap_or(usize::MAX));
        Ok(done)
    }
}

/// Lifts an element that is idempotent modulo a nilpotent ideal to a true
/// idempotent by iterating e <- 3e^2 - 2e^3. A true idempotent is a fixed point.
pub fn lift_idempotent(alg: &ConstantAlgebra, mut e: Vec<u32>) -> Result<Vec<u32>> {
    let f = alg.field();
    for _ in 0..=alg.dim().max(1).ilog2() + 2 {
        let e2 = alg.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = alg.mul(&e2, &e);
        e = e2
            .iter()
            .zip(&e3)
            .map(|(&a, &b)| f.sub(f.mul(3, a), f.mul(2, b)))
            .collect();
    }
    if alg.mul(&e, &e) == e {
        Ok(e)
    } else {
        Err(Error::InvalidAlgebra(
            "element is not idempotent modulo the radical".into(),
        ))
    }
}

fn solve_unit(field: PrimeField, table: &StructureTable) -> Result<Vec<u32>> {
    // unknown u: for all j, sum_k u_k (b_k b_j) = b_j and sum_k u_k (b_j b_k) = b_j
    let d = table.dim();
    let rows = 2 * d * d;
    let mut m = Mat::zeros(field, rows, d);
    let mut rhs = Mat::zeros(field, rows, 1);
    for j in 0..d {
        for k in 0..d {
            for &(t, c) in table.entry(k, j) {
                let r = j * d + t as usize;
                m.set(r, k, field.add(m.get(r, k), c));
            }
            for &(t, c) in table.entry(j, k) {
                let r = d * d + j * d + t as usize;
                m.set(r, k, field.add(m.get(r, k), c));
            }
        }
        rhs.set(j * d + j, 0, 1);
        rhs.set(d * d + j * d + j, 0, 1);
    }
    let x = m
        .solve(&rhs)?
        .ok_or_else(|| Error::InvalidAlgebra("the algebra has no unit".into()))?;
    Ok(x.into_data())
}
