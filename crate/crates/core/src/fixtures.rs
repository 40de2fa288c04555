//! Named algebras used throughout the tests, the acceptance suite and the CLI.

use std::sync::Arc;

use crate::algebra::{nakayama, AdmissibleSequence, Algebra, Arrow, MonomialPresentation, Quiver};
use crate::error::Result;
use crate::exactfield::PrimeField;

/// The three Nakayama algebras that are CM-finite, non-Gorenstein and not
/// CM-free.
pub const RINGEL_SEQUENCES: [&[usize]; 3] = [&[6, 6, 5], &[8, 8, 8, 7], &[10, 10, 9, 10, 9]];

pub fn cyclic_nakayama(values: &[usize], field: PrimeField) -> Result<Arc<Algebra>> {
    let seq = AdmissibleSequence::cyclic(values.to_vec())?;
    Ok(Arc::new(nakayama(&seq, field)?.assemble()?))
}

pub fn linear_nakayama(values: &[usize], field: PrimeField) -> Result<Arc<Algebra>> {
    let seq = AdmissibleSequence::linear(values.to_vec())?;
    Ok(Arc::new(nakayama(&seq, field)?.assemble()?))
}

/// k[x]/(x^2), the cyclic Nakayama algebra with sequence (2).
pub fn dual_numbers(field: PrimeField) -> Arc<Algebra> {
    cyclic_nakayama(&[2], field)
        .expect("(2) is admissible")
        .with_label_arc("k[x]/(x^2)")
}

/// Path algebra of 1 -> 2, the linear Nakayama algebra (2, 1).
pub fn a2(field: PrimeField) -> Arc<Algebra> {
    linear_nakayama(&[2, 1], field)
        .expect("(2,1) is admissible")
        .with_label_arc("A2")
}

/// The self-injective cyclic Nakayama algebra (4, 4, 4).
pub fn cyclic_444(field: PrimeField) -> Arc<Algebra> {
    cyclic_nakayama(&[4, 4, 4], field).expect("(4,4,4) is admissible")
}

pub fn ringel(index: usize, field: PrimeField) -> Arc<Algebra> {
    cyclic_nakayama(RINGEL_SEQUENCES[index], field).expect("Ringel sequences are admissible")
}

/// A monomial algebra that is not Nakayama: a 2-cycle 0 -> 1 -> 0 with both
/// compositions zero and an extra arrow 0 -> 2.
pub fn branched_cycle(field: PrimeField) -> Arc<Algebra> {
    let arrow = |name: &str, source, target| Arrow {
        name: name.into(),
        source,
        target,
    };
    let quiver = Quiver::new(3, vec![arrow("a", 0, 1), arrow("b", 1, 0), arrow("c", 0, 2)]).expect("valid quiver");
    let pres = MonomialPresentation::new(field, quiver, vec![vec![0, 1], vec![1, 0]]).expect("admissible");
    Arc::new(pres.assemble().expect("finite").with_label("branched"))
}

/// Two loops x, y at one vertex with x^2 = y^2 = xyx = yxy = 0.
pub fn two_loops(field: PrimeField) -> Arc<Algebra> {
    let loop_at = |name: &str| Arrow {
        name: name.into(),
        source: 0,
        target: 0,
    };
    let quiver = Quiver::new(1, vec![loop_at("x"), loop_at("y")]).expect("valid quiver");
    let rels = vec![vec![0, 0], vec![1, 1], vec![0, 1, 0], vec![1, 0, 1]];
    let pres = MonomialPresentation::new(field, quiver, rels).expect("admissible");
    Arc::new(pres.assemble().expect("finite").with_label("two-loops"))
}

trait Relabel {
    fn with_label_arc(self, label: &str) -> Arc<Algebra>;
}

impl Relabel for Arc<Algebra> {
    fn with_label_arc(self, label: &str) -> Arc<Algebra> {
        let alg = Arc::try_unwrap(self).expect("fresh algebra has a single owner");
        Arc::new(alg.with_label(label))
    }
}
