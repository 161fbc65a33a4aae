use std::cmp::Ordering;

/// Graded reverse-lexicographic order with a configurable variable
/// ranking. `priority` lists all variables from most to least expensive;
/// ties in degree are broken at the cheapest variable first, where the
/// monomial with the larger exponent is the smaller one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    priority: Vec<usize>,
}

impl MonomialOrder {
    /// Degrevlex with `x_0 > x_1 > ... > x_{n-1}`.
    pub fn degrevlex(n: usize) -> Self {
        MonomialOrder {
            priority: (0..n).collect(),
        }
    }

    /// Degrevlex with `cheap` moved to the bottom of the ranking.
    pub fn with_cheapest(n: usize, cheap: usize) -> Self {
        let mut priority: Vec<usize> = (0..n).filter(|&v| v != cheap).collect();
        priority.push(cheap);
        MonomialOrder { priority }
    }

    pub fn var_count(&self) -> usize {
        self.priority.len()
    }

    pub fn cheapest(&self) -> usize {
        *self.priority.last().expect("nonempty order")
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let da: u64 = a.iter().map(|&x| x as u64).sum();
        let db: u64 = b.iter().map(|&x| x as u64).sum();
        if da != db {
            return da.cmp(&db);
        }
        for &v in self.priority.iter().rev() {
            if a[v] != b[v] {
                return b[v].cmp(&a[v]);
            }
        }
        Ordering::Equal
    }
}
