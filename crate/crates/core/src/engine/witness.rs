use crate::magma::{Magma, Permutation};

/// Best complete copy obtained from solver models so far.
///
/// Every model handed in agrees with the committed prefix, so the stored copy
/// does too, and its value at the next open cell bounds that cell from above.
#[derive(Debug, Clone, Default)]
pub struct WitnessState {
    best: Option<(Vec<usize>, Permutation)>,
    scratch: Vec<usize>,
}

impl WitnessState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Offers the copy of `m` under `f`; keeps it when it is smaller. Cells
    /// before `from` are known to agree and are not compared. Returns the
    /// copy's value at `from`.
    pub fn offer(&mut self, m: &Magma, f: &Permutation, from: usize) -> usize {
        let n = m.order();
        let inv = f.inverse();
        self.scratch.clear();
        self.scratch.extend((0..n * n).map(|idx| {
            let (r, c) = (idx / n, idx % n);
            f.apply(m.get(inv.apply(r), inv.apply(c)))
        }));
        let value = self.scratch[from];
        let better = match &self.best {
            None => true,
            Some((cells, _)) => self.scratch[from..] < cells[from..],
        };
        if better {
            let cells = std::mem::take(&mut self.scratch);
            self.best = Some((cells, f.clone()));
        }
        value
    }

    /// The witness value at row-major position `idx`.
    pub fn value(&self, idx: usize) -> Option<usize> {
        self.best.as_ref().map(|(cells, _)| cells[idx])
    }

    pub fn table(&self) -> Option<&[usize]> {
        self.best.as_ref().map(|(cells, _)| cells.as_slice())
    }

    pub fn permutation(&self) -> Option<&Permutation> {
        self.best.as_ref().map(|(_, f)| f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::two_element_example;

    #[test]
    fn keeps_the_smaller_copy() {
        let m = two_element_example();
        let mut w = WitnessState::new();
        assert_eq!(w.value(0), None);
        assert_eq!(w.offer(&m, &Permutation::identity(2), 0), 0);
        assert_eq!(w.table().unwrap(), &[0, 1, 1, 1]);
        let swap = Permutation::from_images(vec![1, 0]).unwrap();
        w.offer(&m, &swap, 0);
        assert_eq!(w.table().unwrap(), &[0, 0, 0, 1]);
        // a larger copy does not replace it
        w.offer(&m, &Permutation::identity(2), 0);
        assert_eq!(w.permutation().unwrap(), &swap);
    }
}
