use minterval::Interval;

/// Saturating score: each witness contributes `min(1, h / length)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scorer {
    pub h: f64,
}

impl Default for Scorer {
    fn default() -> Scorer {
        Scorer { h: 8.0 }
    }
}

impl Scorer {
    /// Contributions are summed in sorted order, so the score does not
    /// depend on the order of `witnesses`.
    pub fn score(&self, witnesses: &[Interval]) -> f64 {
        let mut parts: Vec<f64> = witnesses
            .iter()
            .map(|iv| (self.h / iv.length() as f64).min(1.0))
            .collect();
        parts.sort_by(f64::total_cmp);
        parts.iter().sum()
    }
}

pub fn rank(witnesses: &[Interval]) -> f64 {
    Scorer::default().score(witnesses)
}
