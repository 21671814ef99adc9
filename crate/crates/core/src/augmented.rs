//! Augmented Young diagrams: a diagram with a marked outer corner (the
//! "special box"), the edge/bump relation of the augmented Young graph, its
//! extension to arbitrary column marks, and path lifting.

use crate::tableau::{InsertionTableau, YoungDiagram};
use crate::{Error, Result};

/// A diagram together with a special box sitting at one of its outer corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedDiagram {
    pub regular: YoungDiagram,
    pub special: (usize, usize),
}

impl AugmentedDiagram {
    pub fn new(regular: YoungDiagram, special: (usize, usize)) -> Result<Self> {
        if !regular.is_outer_corner(special.0, special.1) {
            return Err(Error::NotAnOuterCorner {
                x: special.0,
                y: special.1,
            });
        }
        Ok(AugmentedDiagram { regular, special })
    }
}

/// A node of the extended graph: the special-box column may be any
/// non-negative integer, not necessarily a corner of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedNode {
    pub x: usize,
    pub regular: YoungDiagram,
}

/// Split a tableau containing exactly one `+inf` entry into its augmented
/// shape: the shape without the infinite box, plus that box's position.
pub fn augmented_shape(t: &InsertionTableau) -> Result<AugmentedDiagram> {
    let special = t.infinity_position()?;
    let full = t.shape();
    let mut rows: Vec<usize> = full.rows().to_vec();
    rows[special.1] -= 1;
    AugmentedDiagram::new(YoungDiagram::from_rows(rows)?, special)
}

/// One growth step: add `new_box` to the regular diagram; if it lands on the
/// special box, the special box escapes to the outer corner in the row above.
pub fn step(a: &AugmentedDiagram, new_box: (usize, usize)) -> Result<AugmentedDiagram> {
    let grown = a.regular.with_box(new_box.0, new_box.1)?;
    let special = if new_box == a.special {
        let y = a.special.1 + 1;
        (grown.row_len(y), y)
    } else {
        a.special
    };
    AugmentedDiagram::new(grown, special)
}

/// `b` follows `a` by one edge of the augmented Young graph.
pub fn is_edge(a: &AugmentedDiagram, b: &AugmentedDiagram) -> bool {
    a.regular
        .diff_box(&b.regular)
        .and_then(|d| step(a, d).ok())
        .is_some_and(|expected| expected == *b)
}

/// An edge along which the special box moved.
pub fn is_bump(a: &AugmentedDiagram, b: &AugmentedDiagram) -> bool {
    is_edge(a, b) && a.special != b.special
}

/// One growth step in the extended graph: when the new box sits in the marked
/// column, the mark jumps to the largest row length of the grown diagram that
/// still fits, i.e. `max { lambda_i : lambda_i <= x }` (zero rows included).
pub fn step_extended(node: &ExtendedNode, new_box: (usize, usize)) -> Result<ExtendedNode> {
    let grown = node.regular.with_box(new_box.0, new_box.1)?;
    let x = if new_box.0 == node.x {
        grown
            .rows()
            .iter()
            .copied()
            .filter(|&l| l <= node.x)
            .max()
            .unwrap_or(0)
    } else {
        node.x
    };
    Ok(ExtendedNode { x, regular: grown })
}

/// Lift a growth path of plain diagrams to the unique augmented path starting
/// at `start`.
pub fn lift_path(start: AugmentedDiagram, path: &[YoungDiagram]) -> Result<Vec<AugmentedDiagram>> {
    match path.first() {
        Some(head) if *head == start.regular => {}
        _ => {
            return Err(Error::InvalidArgument(
                "path must start at the regular part of the start node".into(),
            ))
        }
    }
    let mut lifted = vec![start];
    for pair in path.windows(2) {
        let d = pair[0].diff_box(&pair[1]).ok_or_else(|| {
            Error::InvalidArgument("consecutive diagrams must differ by one box".into())
        })?;
        let next = step(lifted.last().unwrap(), d)?;
        lifted.push(next);
    }
    Ok(lifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::{rsk, Entry};

    fn diagram(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::from_rows(rows.to_vec()).unwrap()
    }

    fn aug(rows: &[usize], special: (usize, usize)) -> AugmentedDiagram {
        AugmentedDiagram::new(diagram(rows), special).unwrap()
    }

    #[test]
    fn bump_moves_special_to_row_above() {
        let a = aug(&[2, 1], (2, 0));
        let b = step(&a, (2, 0)).unwrap();
        assert_eq!(b, aug(&[3, 1], (1, 1)));
        assert!(is_edge(&a, &b));
        assert!(is_bump(&a, &b));
    }

    #[test]
    fn non_bump_keeps_special() {
        let a = aug(&[2, 1], (2, 0));
        let b = step(&a, (1, 1)).unwrap();
        assert_eq!(b, aug(&[2, 2], (2, 0)));
        assert!(is_edge(&a, &b));
        assert!(!is_bump(&a, &b));
    }

    #[test]
    fn stale_special_is_not_an_edge() {
        let a = aug(&[2, 1], (2, 0));
        let b = aug(&[3, 1], (3, 0));
        assert!(!is_edge(&a, &b));
    }

    #[test]
    fn step_rejects_non_corner() {
        let a = aug(&[2, 1], (2, 0));
        assert!(step(&a, (0, 0)).is_err());
    }

    #[test]
    fn extended_step_examples() {
        let node = ExtendedNode {
            x: 2,
            regular: diagram(&[2, 2, 1]),
        };
        let next = step_extended(&node, (2, 0)).unwrap();
        assert_eq!(next.regular.rows(), &[3, 2, 1]);
        assert_eq!(next.x, 2);
        // new box away from the marked column leaves the mark alone
        let next = step_extended(&node, (1, 2)).unwrap();
        assert_eq!(next.x, 2);
        // mark falls to zero when every row is longer
        let node = ExtendedNode {
            x: 0,
            regular: diagram(&[1]),
        };
        let next = step_extended(&node, (0, 1)).unwrap();
        assert_eq!(next.x, 0);
    }

    #[test]
    fn augmented_shape_of_tableau_with_infinity() {
        let w = [
            Entry::finite(0.3, 0),
            Entry::finite(0.7, 1),
            Entry::PlusInfinity,
            Entry::finite(0.5, 2),
        ];
        // 0.5 bumps 0.7 (the least larger entry), so inf stays at (2, 0):
        // 0.3 0.5 inf / 0.7
        let (p, _) = rsk(&w).unwrap();
        let a = augmented_shape(&p).unwrap();
        assert_eq!(a.regular.rows(), &[2, 1]);
        assert_eq!(a.special, (2, 0));
        // one more entry below inf bumps it to the end of row 1
        let w5 = [w.as_slice(), &[Entry::finite(0.6, 3)]].concat();
        let (p, _) = rsk(&w5).unwrap();
        let a = augmented_shape(&p).unwrap();
        assert_eq!(a.regular.rows(), &[3, 1]);
        assert_eq!(a.special, (1, 1));
        let no_inf = rsk(&w[..2]).unwrap().0;
        assert!(augmented_shape(&no_inf).is_err());
    }

    #[test]
    fn lift_constant_column_and_bottom_row() {
        // column growth misses a special box sitting at the end of row 0
        let path = vec![diagram(&[1]), diagram(&[1, 1]), diagram(&[1, 1, 1])];
        let lift = lift_path(aug(&[1], (1, 0)), &path).unwrap();
        assert!(lift.iter().all(|n| n.special == (1, 0)));
        // bottom-row growth onto the special box bumps it every step
        let path = vec![diagram(&[1]), diagram(&[2])];
        let lift = lift_path(aug(&[1], (1, 0)), &path).unwrap();
        assert_eq!(lift[1].special, (0, 1));
        // projection returns the original path
        let projected: Vec<YoungDiagram> = lift.iter().map(|n| n.regular.clone()).collect();
        assert_eq!(projected, path);
    }
}
