use super::ops::coproduct;
use super::{SimplicialMap, TruncSSet};
use crate::error::{Error, Result};

/// A bisimplicial set truncated at `ncap` horizontally and `mcap` vertically.
///
/// Column `n` is the vertical simplicial set of `(m, n)`-simplices; the
/// horizontal structure maps are simplicial maps between columns, so the two
/// directions commute exactly when those maps pass [`SimplicialMap::check`].
#[derive(Clone, Debug)]
pub struct BiTruncSSet {
    pub columns: Vec<TruncSSet>,
    /// `hface[n][i]`: column `n` to column `n - 1`, for `n >= 1`.
    pub hface: Vec<Vec<SimplicialMap>>,
    /// `hdegen[n][i]`: column `n` to column `n + 1`, for `n < ncap`.
    pub hdegen: Vec<Vec<SimplicialMap>>,
}

impl BiTruncSSet {
    pub fn new(
        columns: Vec<TruncSSet>,
        hface: Vec<Vec<SimplicialMap>>,
        hdegen: Vec<Vec<SimplicialMap>>,
    ) -> Result<Self> {
        let ncap = columns
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Structural("no columns".into()))?;
        let mcap = columns[0].cap();
        if columns.iter().any(|c| c.cap() != mcap) {
            return Err(Error::Structural(
                "columns with different vertical caps".into(),
            ));
        }
        if hface.len() != ncap + 1 || hdegen.len() != ncap + 1 {
            return Err(Error::Structural(
                "horizontal table count does not match ncap".into(),
            ));
        }
        Ok(BiTruncSSet {
            columns,
            hface,
            hdegen,
        })
    }

    pub fn ncap(&self) -> usize {
        self.columns.len() - 1
    }

    pub fn mcap(&self) -> usize {
        self.columns[0].cap()
    }

    /// The horizontal simplicial set at vertical degree `m`.
    pub fn row(&self, m: usize) -> TruncSSet {
        let ncap = self.ncap();
        let sizes = self.columns.iter().map(|c| c.size(m)).collect();
        let face = (0..=ncap)
            .map(|n| {
                self.hface[n]
                    .iter()
                    .map(|f| f.components[m].clone())
                    .collect()
            })
            .collect();
        let degen = (0..=ncap)
            .map(|n| {
                self.hdegen[n]
                    .iter()
                    .map(|f| f.components[m].clone())
                    .collect()
            })
            .collect();
        TruncSSet::from_tables(ncap, sizes, face, degen).expect("row tables are well formed")
    }

    /// The box product: `(m, n)`-simplices are pairs of an `m`-simplex of
    /// `vertical` and an `n`-simplex of `horizontal`.
    pub fn box_product(vertical: &TruncSSet, horizontal: &TruncSSet) -> Result<Self> {
        let ncap = horizontal.cap();
        let mcap = vertical.cap();
        let columns: Vec<TruncSSet> = (0..=ncap)
            .map(|n| {
                let parts = vec![vertical; horizontal.size(n)];
                coproduct(&parts, mcap).map(|c| c.sset)
            })
            .collect::<Result<_>>()?;
        let size_v: Vec<usize> = vertical.sizes().to_vec();
        let horizontal_map = |n: usize, target_of: &dyn Fn(usize) -> usize| {
            SimplicialMap::new(
                (0..=mcap)
                    .map(|m| {
                        (0..horizontal.size(n) * size_v[m])
                            .map(|z| target_of(z / size_v[m]) * size_v[m] + z % size_v[m])
                            .collect()
                    })
                    .collect(),
            )
        };
        let hface = (0..=ncap)
            .map(|n| {
                if n == 0 {
                    vec![]
                } else {
                    (0..=n)
                        .map(|i| horizontal_map(n, &|l| horizontal.face(n, i, l)))
                        .collect()
                }
            })
            .collect();
        let hdegen = (0..=ncap)
            .map(|n| {
                if n == ncap {
                    vec![]
                } else {
                    (0..=n)
                        .map(|i| horizontal_map(n, &|l| horizontal.degen(n, i, l)))
                        .collect()
                }
            })
            .collect();
        BiTruncSSet::new(columns, hface, hdegen)
    }
}
