//! Realizable oriented matroids: sign vectors of elementary vectors.

use crate::error::{Error, Result};
use crate::ground::{ElementSet, GroundSet, SignedSubset};
use crate::linalg::Matrix;
use crate::matroid::Matroid;
use crate::scalar::Field;

use super::OrientedMatroid;

/// Sign pattern of the unique (up to scaling) kernel vector of `m` supported
/// on `support`.
fn elementary<T: Field>(m: &Matrix<T>, support: ElementSet) -> Result<SignedSubset> {
    let kernel = m.select_columns(support).kernel();
    let [v] = kernel.as_slice() else {
        return Err(Error::Inconsistent(format!(
            "kernel on a circuit support has dimension {}",
            kernel.len()
        )));
    };
    let mut pos = ElementSet::EMPTY;
    let mut neg = ElementSet::EMPTY;
    for (x, e) in v.iter().zip(support.iter()) {
        if x.is_positive() {
            pos = pos.with(e);
        } else if x.is_negative() {
            neg = neg.with(e);
        } else {
            return Err(Error::Inconsistent("elementary vector vanishes on its support".into()));
        }
    }
    SignedSubset::new(pos, neg)
}

/// Circuits are the elementary vectors of the kernel of `columns`; cocircuits
/// the elementary vectors of the row space, obtained as the kernel of a
/// matrix whose rows span that kernel.
pub(super) fn oriented_matroid<T: Field, S: Into<String>>(
    columns: &Matrix<T>,
    labels: impl IntoIterator<Item = S>,
) -> Result<OrientedMatroid> {
    let ground = GroundSet::new(labels.into_iter().map(Into::into))?;
    if ground.len() != columns.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{} labels for {} columns",
            ground.len(),
            columns.cols()
        )));
    }
    let rank = columns.rank();
    let bases = ground
        .full()
        .subsets()
        .filter(|s| s.len() == rank && columns.select_columns(*s).rank() == rank);
    let matroid = Matroid::from_bases(ground.clone(), bases)?;
    let circuits = matroid
        .circuits()
        .iter()
        .map(|&c| elementary(columns, c))
        .collect::<Result<Vec<_>>>()?;
    let orth = Matrix::from_rows(columns.kernel(), columns.cols())?;
    let cocircuits = matroid
        .cocircuits()
        .iter()
        .map(|&d| elementary(&orth, d))
        .collect::<Result<Vec<_>>>()?;
    OrientedMatroid::from_parts(ground, circuits, cocircuits)
}
