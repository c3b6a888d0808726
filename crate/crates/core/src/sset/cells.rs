//! Simplicial sets presented by nondegenerate cells and their faces.
//!
//! Every simplex of the presented set is `e^* c` for a unique cell `c` and
//! surjection `e: [n] -> [dim c]`. Faces of cells may be degenerate.

use super::surj::{codegeneracy, coface, compose, surjections};
use super::{build_keyed, Keyed, SimplicialMap};
use crate::error::{Error, Result};

/// The simplex `e^* cell`; `surjection` has length `n + 1` for an n-simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplexRef {
    pub cell: usize,
    pub surjection: Vec<usize>,
}

impl SimplexRef {
    pub fn nondegenerate(cell: usize, dim: usize) -> Self {
        SimplexRef {
            cell,
            surjection: (0..=dim).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.surjection.len() - 1
    }

    /// `s_i` of this simplex.
    pub fn degen(&self, i: usize) -> Self {
        SimplexRef {
            cell: self.cell,
            surjection: compose(&self.surjection, &codegeneracy(self.degree(), i)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    /// `faces[i] = d_i` of the cell, each of degree `dim - 1`.
    pub faces: Vec<SimplexRef>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    pub cells: Vec<Cell>,
}

impl Presentation {
    /// `d_i` of any simplex.
    pub fn face(&self, s: &SimplexRef, i: usize) -> SimplexRef {
        let n = s.degree();
        let tau = compose(&s.surjection, &coface(n, i));
        let k = self.cells[s.cell].dim;
        match (0..=k).find(|v| !tau.contains(v)) {
            None => SimplexRef {
                cell: s.cell,
                surjection: tau,
            },
            Some(j) => {
                let rest: Vec<usize> = tau.iter().map(|&t| if t > j { t - 1 } else { t }).collect();
                let f = &self.cells[s.cell].faces[j];
                SimplexRef {
                    cell: f.cell,
                    surjection: compose(&f.surjection, &rest),
                }
            }
        }
    }

    /// Checks face degrees and `d_i d_j = d_{j-1} d_i` for `i < j` on every cell.
    pub fn validate(&self) -> std::result::Result<(), (usize, String)> {
        for (c, cell) in self.cells.iter().enumerate() {
            if cell.dim == 0 {
                if !cell.faces.is_empty() {
                    return Err((c, "a vertex has no faces".into()));
                }
                continue;
            }
            if cell.faces.len() != cell.dim + 1 {
                return Err((
                    c,
                    format!(
                        "expected {} faces, found {}",
                        cell.dim + 1,
                        cell.faces.len()
                    ),
                ));
            }
            for (i, f) in cell.faces.iter().enumerate() {
                if f.cell >= self.cells.len() {
                    return Err((c, format!("face {i} refers to an unknown cell")));
                }
                if f.degree() != cell.dim - 1 {
                    return Err((
                        c,
                        format!(
                            "face {i} has degree {}, expected {}",
                            f.degree(),
                            cell.dim - 1
                        ),
                    ));
                }
                let target = self.cells[f.cell].dim;
                if f.surjection.first() != Some(&0)
                    || f.surjection.last() != Some(&target)
                    || f.surjection
                        .windows(2)
                        .any(|w| w[1] != w[0] && w[1] != w[0] + 1)
                {
                    return Err((c, format!("face {i} is not a degeneracy of a cell")));
                }
            }
            let me = SimplexRef::nondegenerate(c, cell.dim);
            for j in 1..=cell.dim {
                for i in 0..j {
                    if cell.dim >= 2 {
                        let a = self.face(&self.face(&me, j), i);
                        let b = self.face(&self.face(&me, i), j - 1);
                        if a != b {
                            return Err((c, format!("faces violate d{i} d{j} = d{} d{i}", j - 1)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The presented simplicial set truncated at `cap`.
    pub fn build(&self, cap: usize) -> Result<Keyed<SimplexRef>> {
        self.validate()
            .map_err(|(c, w)| Error::Structural(format!("cell {c}: {w}")))?;
        build_keyed(
            cap,
            |n| {
                let mut out = Vec::new();
                for (c, cell) in self.cells.iter().enumerate() {
                    for e in surjections(n, cell.dim) {
                        out.push(SimplexRef {
                            cell: c,
                            surjection: e,
                        });
                    }
                }
                out
            },
            |_, i, s| self.face(s, i),
            |_, i, s| s.degen(i),
        )
    }

    /// The map determined by an image simplex of the same degree for each
    /// cell. Fails when the images are out of the truncation or do not
    /// commute with faces.
    pub fn map_to(
        &self,
        dom: &Keyed<SimplexRef>,
        target: &Presentation,
        cod: &Keyed<SimplexRef>,
        images: &[SimplexRef],
    ) -> Result<SimplicialMap> {
        for (c, cell) in self.cells.iter().enumerate() {
            if images[c].degree() != cell.dim {
                return Err(Error::Structural(format!(
                    "image of cell {c} has the wrong degree"
                )));
            }
            for (i, f) in cell.faces.iter().enumerate() {
                let via_face = SimplexRef {
                    cell: images[f.cell].cell,
                    surjection: compose(&images[f.cell].surjection, &f.surjection),
                };
                if target.face(&images[c], i) != via_face {
                    return Err(Error::Structural(format!(
                        "image of cell {c} does not commute with face {i}"
                    )));
                }
            }
        }
        let comps = (0..=dom.sset.cap())
            .map(|n| {
                dom.keys[n]
                    .iter()
                    .map(|s| {
                        let img = &images[s.cell];
                        let t = SimplexRef {
                            cell: img.cell,
                            surjection: compose(&img.surjection, &s.surjection),
                        };
                        cod.id(n, &t)
                            .ok_or_else(|| Error::Structural("image outside the target".into()))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap::new(comps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certcheck::check_simplicial_identities;
    use crate::sset::simplex;

    fn v(c: usize) -> SimplexRef {
        SimplexRef::nondegenerate(c, 0)
    }

    #[test]
    fn presented_simplex_matches_the_standard_one() {
        // Vertices 0,1,2; edges 01, 02, 12; one triangle.
        let e = |c| SimplexRef::nondegenerate(c, 1);
        let p = Presentation {
            cells: vec![
                Cell {
                    dim: 0,
                    faces: vec![],
                },
                Cell {
                    dim: 0,
                    faces: vec![],
                },
                Cell {
                    dim: 0,
                    faces: vec![],
                },
                Cell {
                    dim: 1,
                    faces: vec![v(1), v(0)],
                },
                Cell {
                    dim: 1,
                    faces: vec![v(2), v(0)],
                },
                Cell {
                    dim: 1,
                    faces: vec![v(2), v(1)],
                },
                Cell {
                    dim: 2,
                    faces: vec![e(5), e(4), e(3)],
                },
            ],
        };
        let k = p.build(3).unwrap();
        assert_eq!(k.sset.sizes(), simplex(2, 3).sizes());
        assert!(check_simplicial_identities(&k.sset).passed());
    }

    #[test]
    fn triangle_with_a_degenerate_face() {
        let p = Presentation {
            cells: vec![
                Cell {
                    dim: 0,
                    faces: vec![],
                },
                Cell {
                    dim: 1,
                    faces: vec![v(0), v(0)],
                },
                Cell {
                    dim: 2,
                    faces: vec![
                        SimplexRef::nondegenerate(1, 1),
                        SimplexRef::nondegenerate(1, 1),
                        v(0).degen(0),
                    ],
                },
            ],
        };
        let k = p.build(3).unwrap();
        assert!(check_simplicial_identities(&k.sset).passed());
        assert_eq!(k.sset.nondegenerate_counts(), vec![1, 1, 1, 0]);
    }

    #[test]
    fn inconsistent_faces_are_rejected() {
        let p = Presentation {
            cells: vec![
                Cell {
                    dim: 0,
                    faces: vec![],
                },
                Cell {
                    dim: 0,
                    faces: vec![],
                },
                Cell {
                    dim: 1,
                    faces: vec![v(1), v(0)],
                },
                Cell {
                    dim: 1,
                    faces: vec![v(0), v(1)],
                },
                // d0 d2 should be vertex 1 (= d1 d0) but the edges disagree.
                Cell {
                    dim: 2,
                    faces: vec![
                        SimplexRef::nondegenerate(2, 1),
                        SimplexRef::nondegenerate(2, 1),
                        SimplexRef::nondegenerate(3, 1),
                    ],
                },
            ],
        };
        assert!(p.validate().is_err());
    }
}
