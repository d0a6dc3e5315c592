//! Graded vector space windows with labeled bases.
//!
//! These are finite truncations of the infinite-dimensional spaces the
//! algebra lives in: each basis label carries a cohomological degree and
//! an optional multi-weight for the torus action.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

/// A finite list of labeled basis elements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedSpaceWindow {
    labels: Vec<String>,
    degrees: Vec<i64>,
    weights: Vec<Option<Vec<i64>>>,
    index: BTreeMap<String, usize>,
}

impl GradedSpaceWindow {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a basis label. Labels must be unique within the window.
    pub fn push(&mut self, label: impl Into<String>, degree: i64, weight: Option<Vec<i64>>) -> usize {
        let label = label.into();
        assert!(
            !self.index.contains_key(&label),
            "duplicate basis label: {}",
            label
        );
        let idx = self.labels.len();
        self.index.insert(label.clone(), idx);
        self.labels.push(label);
        self.degrees.push(degree);
        self.weights.push(weight);
        idx
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn weight(&self, i: usize) -> Option<&[i64]> {
        self.weights[i].as_deref()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &str, i64)> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (i, l.as_str(), self.degrees[i]))
    }

    /// Indices of basis elements in a given degree.
    pub fn in_degree(&self, degree: i64) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degrees[i] == degree).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn lookup_by_label() {
        let mut w = GradedSpaceWindow::new();
        w.push("x", 0, Some(vec![1, 0]));
        w.push("y", 1, None);
        assert_eq!(w.len(), 2);
        assert_eq!(w.index_of("y"), Some(1));
        assert_eq!(w.index_of("z"), None);
        assert_eq!(w.degree(0), 0);
        assert_eq!(w.weight(0), Some(&[1i64, 0][..]));
        assert_eq!(w.in_degree(1), vec![1]);
    }

    #[test]
    #[should_panic(expected = "duplicate basis label")]
    fn duplicate_labels_rejected() {
        let mut w = GradedSpaceWindow::new();
        w.push("x", 0, None);
        w.push("x", 1, None);
    }
}
