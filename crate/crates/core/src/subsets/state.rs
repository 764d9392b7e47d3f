use super::{validate_nr, RSet};
use crate::arith::{binomial, factorial_product};
use crate::error::{Error, Result};
use crate::GroupKind;
use num_bigint::BigUint;
use serde::Serialize;

/// One orbit of the pointwise stabiliser: the points sharing a neighbourhood.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    /// 1-based indices of the chosen sets containing every point of the cell.
    pub signature: Vec<usize>,
    pub size: usize,
    /// Member points, increasing and 1-based.
    pub points: Vec<usize>,
}

/// The pointwise stabiliser of a list of chosen `r`-sets, as neighbourhood
/// cells sorted by signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellState {
    n: usize,
    r: usize,
    chosen: Vec<RSet>,
    cells: Vec<Cell>,
    #[serde(skip)]
    cell_of: Vec<usize>,
}

impl CellState {
    /// The state before anything is chosen: one cell holding all of `[n]`.
    pub fn new(n: usize, r: usize) -> Result<Self> {
        validate_nr(n, r)?;
        Ok(CellState {
            n,
            r,
            chosen: Vec::new(),
            cells: vec![Cell { signature: Vec::new(), size: n, points: (1..=n).collect() }],
            cell_of: vec![0; n],
        })
    }

    pub fn from_chosen(n: usize, r: usize, chosen: impl IntoIterator<Item = RSet>) -> Result<Self> {
        let mut state = Self::new(n, r)?;
        for alpha in chosen {
            state.push(alpha)?;
        }
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn chosen(&self) -> &[RSet] {
        &self.chosen
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Index into [`cells`](Self::cells) of the cell holding `point`.
    pub fn cell_index(&self, point: usize) -> usize {
        self.cell_of[point - 1]
    }

    /// The neighbourhood of `point`: indices of chosen sets containing it.
    pub fn neighbourhood(&self, point: usize) -> &[usize] {
        &self.cells[self.cell_index(point)].signature
    }

    /// Sizes of the non-trivial cells, largest first. Determines the
    /// stabiliser up to conjugacy in `S_n`.
    pub fn shape(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.cells.iter().map(|c| c.size).filter(|&s| s > 1).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    pub(crate) fn check_set(&self, alpha: &RSet) -> Result<()> {
        if alpha.len() != self.r {
            return Err(Error::invalid(format!("{alpha} has size {}, expected {}", alpha.len(), self.r)));
        }
        if alpha.max_point() > self.n {
            return Err(Error::invalid(format!("{alpha} is not inside [1, {}]", self.n)));
        }
        Ok(())
    }

    /// Appends `alpha` to the chosen list and splits every cell it meets.
    pub fn push(&mut self, alpha: RSet) -> Result<()> {
        self.check_set(&alpha)?;
        let step = self.chosen.len() + 1;
        let mut cells = Vec::with_capacity(self.cells.len() + self.r);
        for cell in self.cells.drain(..) {
            let (inside, outside): (Vec<usize>, Vec<usize>) = cell.points.iter().partition(|&&p| alpha.contains(p));
            if !outside.is_empty() {
                cells.push(Cell { signature: cell.signature.clone(), size: outside.len(), points: outside });
            }
            if !inside.is_empty() {
                let mut signature = cell.signature;
                signature.push(step);
                cells.push(Cell { signature, size: inside.len(), points: inside });
            }
        }
        cells.sort_by(|a, b| a.signature.cmp(&b.signature));
        for (idx, cell) in cells.iter().enumerate() {
            for &p in &cell.points {
                self.cell_of[p - 1] = idx;
            }
        }
        self.cells = cells;
        self.chosen.push(alpha);
        Ok(())
    }

    /// `|α ∩ C|` for every cell `C`, in cell order.
    pub fn counts(&self, alpha: &RSet) -> Result<Vec<usize>> {
        self.check_set(alpha)?;
        let mut counts = vec![0; self.cells.len()];
        for &p in alpha.points() {
            counts[self.cell_index(p)] += 1;
        }
        Ok(counts)
    }

    /// `|H| = ∏ |C|!` where `H` is the pointwise stabiliser in `S_n`.
    pub fn stabiliser_order(&self) -> BigUint {
        factorial_product(self.cells.iter().map(|c| c.size as u64))
    }

    /// Order of the pointwise stabiliser in the given group.
    pub fn stabiliser_order_in(&self, group: GroupKind) -> BigUint {
        let order = self.stabiliser_order();
        match group {
            GroupKind::Alt if order > BigUint::from(1u32) => order / 2u32,
            _ => order,
        }
    }

    pub fn is_base(&self, group: GroupKind) -> bool {
        let mut twos = 0;
        for cell in &self.cells {
            match cell.size {
                0 | 1 => {}
                2 if group == GroupKind::Alt => twos += 1,
                _ => return false,
            }
        }
        twos <= 1
    }

    /// Length of the orbit of `alpha` under the stabiliser in `S_n`.
    pub fn orbit_size(&self, alpha: &RSet) -> Result<BigUint> {
        let counts = self.counts(alpha)?;
        Ok(self.cells.iter().zip(&counts).map(|(c, &k)| binomial(c.size as u64, k as u64)).product())
    }

    /// Orbit length of `alpha` under the stabiliser in `group`.
    pub fn orbit_size_in(&self, alpha: &RSet, group: GroupKind) -> Result<BigUint> {
        let sym = self.orbit_size(alpha)?;
        if group == GroupKind::Sym || self.is_base(GroupKind::Alt) {
            return Ok(if group == GroupKind::Sym { sym } else { BigUint::from(1u32) });
        }
        // H_α contains a transposition unless every piece is a singleton.
        let counts = self.counts(alpha)?;
        let rigid = self.cells.iter().zip(&counts).all(|(c, &k)| k <= 1 && c.size - k <= 1);
        Ok(if rigid { sym / 2u32 } else { sym })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(points: &[usize]) -> RSet {
        RSet::new(points.to_vec()).unwrap()
    }

    #[test]
    fn base_criteria() {
        let empty = CellState::new(4, 2).unwrap();
        assert!(!empty.is_base(GroupKind::Sym));
        let star = CellState::from_chosen(4, 2, [set(&[1, 2]), set(&[1, 3]), set(&[1, 4])]).unwrap();
        assert!(star.is_base(GroupKind::Sym));
        let one = CellState::from_chosen(4, 2, [set(&[1, 2])]).unwrap();
        assert!(!one.is_base(GroupKind::Alt));
        let two = CellState::from_chosen(5, 2, [set(&[1, 2]), set(&[1, 3])]).unwrap();
        assert!(!two.is_base(GroupKind::Sym));
        assert!(two.is_base(GroupKind::Alt));
    }

    #[test]
    fn orbits() {
        let s = CellState::new(7, 3).unwrap();
        assert_eq!(s.orbit_size(&set(&[1, 2, 3])).unwrap(), BigUint::from(35u32));
        let s = CellState::from_chosen(6, 2, [set(&[1, 2])]).unwrap();
        assert_eq!(s.orbit_size(&set(&[1, 3])).unwrap(), BigUint::from(8u32));
        assert_eq!(s.orbit_size_in(&set(&[1, 3]), GroupKind::Alt).unwrap(), BigUint::from(8u32));
        // H = Sym{1,2} x Sym{3,4} x ..., α = {1,3} leaves nothing to move.
        let s = CellState::from_chosen(4, 2, [set(&[1, 2])]).unwrap();
        assert_eq!(s.orbit_size(&set(&[1, 3])).unwrap(), BigUint::from(4u32));
        assert_eq!(s.orbit_size_in(&set(&[1, 3]), GroupKind::Alt).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn cells_track_neighbourhoods() {
        let s = CellState::from_chosen(6, 2, [set(&[1, 2]), set(&[2, 3])]).unwrap();
        assert_eq!(s.neighbourhood(2), &[1, 2]);
        assert_eq!(s.neighbourhood(1), &[1]);
        assert_eq!(s.neighbourhood(5), &[] as &[usize]);
        assert_eq!(s.shape(), vec![3]);
        assert_eq!(s.stabiliser_order(), BigUint::from(6u32));
        assert!(s.push_check(&set(&[1, 7])).is_err());
    }

    impl CellState {
        fn push_check(&self, alpha: &RSet) -> Result<()> {
            self.check_set(alpha)
        }
    }
}
