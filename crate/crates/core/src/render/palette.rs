//! Vertex colors: vertices that share a bag never share a color.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decomposition::Decomposition;

/// Categorical cycle used before falling back to hue rotation.
const BASE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79",
    "#ad494a",
];

/// Index into an endless color sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Color(pub usize);

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match BASE.get(self.0) {
            Some(c) => f.write_str(c),
            None => {
                // golden-angle steps never repeat a hue
                let hue = (self.0 - BASE.len()) as f64 * 137.507_764 % 360.0;
                write!(f, "hsl({hue:.3},65%,45%)")
            }
        }
    }
}

/// Greedy coloring of the co-bag graph, vertices in identifier order.
pub fn palette(n: usize, t: &Decomposition) -> Vec<Color> {
    let mut bags_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in t.bags().iter().enumerate() {
        for &v in bag {
            bags_of[v].push(i);
        }
    }
    let mut out: Vec<Color> = Vec::with_capacity(n);
    for v in 0..n {
        let mut used: Vec<usize> = bags_of[v]
            .iter()
            .flat_map(|&b| t.bag(b).iter().copied())
            .filter(|&u| u < v)
            .map(|u| out[u].0)
            .collect();
        used.sort_unstable();
        used.dedup();
        let c = used.iter().enumerate().find(|&(i, &c)| i != c).map_or(used.len(), |(i, _)| i);
        out.push(Color(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bag_mates_differ() {
        let t = Decomposition::new(vec![vec![0, 1, 2], vec![1, 2, 3], vec![3, 4]], vec![(0, 1), (1, 2)]).unwrap();
        let p = palette(5, &t);
        for bag in t.bags() {
            for (i, &u) in bag.iter().enumerate() {
                for &v in &bag[i + 1..] {
                    assert_ne!(p[u], p[v]);
                }
            }
        }
        assert_eq!(p[0], Color(0));
        assert_eq!(p[3], Color(0));
    }

    #[test]
    fn large_bags_rotate_hues() {
        let t = Decomposition::new(vec![(0..40).collect()], vec![]).unwrap();
        let p = palette(40, &t);
        let names: std::collections::HashSet<String> = p.iter().map(|c| c.to_string()).collect();
        assert_eq!(names.len(), 40);
        assert_eq!(Color(12).to_string(), "hsl(0.000,65%,45%)");
    }
}
