use crate::error::Witness;
use crate::kernel::PointSet;

/// Keeps the largest violation seen over a scan; ties keep the earliest tuple,
/// so scanning in lexicographic order yields the lowest-index maximizer.
pub(crate) struct Worst<const N: usize> {
    best: Option<(f64, [usize; N])>,
}

impl<const N: usize> Worst<N> {
    pub(crate) fn new() -> Self {
        Self { best: None }
    }

    #[inline]
    pub(crate) fn consider(&mut self, magnitude: f64, tuple: [usize; N]) {
        match self.best {
            Some((m, _)) if magnitude <= m => {}
            _ => self.best = Some((magnitude, tuple)),
        }
    }

    pub(crate) fn is_clear(&self) -> bool {
        self.best.is_none()
    }

    pub(crate) fn witness(&self, points: &PointSet) -> Option<Witness> {
        self.best
            .map(|(m, t)| Witness::new(t.to_vec(), points.labels_of(&t), m))
    }

    /// Witness whose labels come from a caller-provided lookup (mixed point sets).
    pub(crate) fn witness_with(&self, label: impl Fn(usize, usize) -> String) -> Option<Witness> {
        self.best.map(|(m, t)| {
            let labels = t
                .iter()
                .enumerate()
                .map(|(pos, &i)| label(pos, i))
                .collect();
            Witness::new(t.to_vec(), labels, m)
        })
    }
}
