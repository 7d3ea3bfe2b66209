//! Fillings of column diagrams and their statistics.
//!
//! Boxes are `(i, j)` with column `i` (1-based in the docs, 0-based in code)
//! and row `j >= 1`; row 0 is the augmented row whose label in column `i`
//! is `i`.

use crate::qt_field::RatQT;

/// A labelling of the column diagram of `shape`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filling {
    shape: Vec<usize>,
    /// `labels[i][j - 1]` is the label of box `(i, j)`.
    labels: Vec<Vec<usize>>,
}

/// Statistics of an augmented filling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillingStats {
    pub maj: usize,
    pub inv_count: usize,
    pub inv: i64,
    pub coinv: i64,
    /// `arm[i][j - 1]` for the box `(i, j)`.
    pub arm: Vec<Vec<usize>>,
    pub arm_left: Vec<Vec<usize>>,
    pub arm_right: Vec<Vec<usize>>,
    pub leg: Vec<Vec<usize>>,
}

/// How row-1 boxes with a label change enter the weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowOneFactor {
    /// `(1 - t)/(1 - q^{-(leg+1)} t^{a+1})`, the finite formula.
    Finite,
    /// As `Finite` with `a` increased by the given amount.
    Shifted(usize),
    /// The limit value `1 - t`.
    Stable,
}

impl Filling {
    /// Builds a filling from column label lists; `labels[i].len()` must equal `shape[i]`.
    pub fn new(shape: Vec<usize>, labels: Vec<Vec<usize>>) -> Self {
        assert_eq!(shape.len(), labels.len());
        for (h, col) in shape.iter().zip(&labels) {
            assert_eq!(*h, col.len());
        }
        Filling { shape, labels }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    /// The augmented label of `(i, j)` (0-based column).
    pub fn label(&self, i: usize, j: usize) -> usize {
        if j == 0 {
            i + 1
        } else {
            self.labels[i][j - 1]
        }
    }

    fn has_box(&self, i: usize, j: usize) -> bool {
        i < self.shape.len() && j <= self.shape[i]
    }

    /// Number of boxes with each label `1..=n`.
    pub fn label_counts(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n];
        for col in &self.labels {
            for &l in col {
                if l <= n {
                    c[l - 1] += 1;
                }
            }
        }
        c
    }

    /// Checks the non-attacking condition on every attacking pair.
    pub fn is_nonattacking(&self) -> bool {
        let n = self.shape.len();
        let height = self.shape.iter().copied().max().unwrap_or(0);
        for j in 0..=height {
            for i in 0..n {
                if !self.has_box(i, j) {
                    continue;
                }
                for i2 in i + 1..n {
                    if self.has_box(i2, j) && self.label(i, j) == self.label(i2, j) {
                        return false;
                    }
                    if j >= 1 && self.has_box(i2, j - 1) && self.label(i, j) == self.label(i2, j - 1) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn stats(&self) -> FillingStats {
        let mu = &self.shape;
        let n = mu.len();
        let height = mu.iter().copied().max().unwrap_or(0);
        let mut arm = Vec::with_capacity(n);
        let mut arm_left = Vec::with_capacity(n);
        let mut arm_right = Vec::with_capacity(n);
        let mut leg = Vec::with_capacity(n);
        for i in 0..n {
            let (mut ac, mut al, mut ar, mut lc) = (vec![], vec![], vec![], vec![]);
            for j in 1..=mu[i] {
                let l = (0..i).filter(|&k| mu[k] <= mu[i] && mu[k] >= j).count();
                let r = (i + 1..n).filter(|&k| mu[k] < mu[i] && mu[k] + 1 >= j).count();
                al.push(l);
                ar.push(r);
                ac.push(l + r);
                lc.push(mu[i] - j);
            }
            arm.push(ac);
            arm_left.push(al);
            arm_right.push(ar);
            leg.push(lc);
        }
        let mut maj = 0usize;
        let mut des_arm = 0usize;
        let mut arm_total = 0usize;
        for i in 0..n {
            for j in 1..=mu[i] {
                arm_total += arm[i][j - 1];
                if self.label(i, j) > self.label(i, j - 1) {
                    maj += leg[i][j - 1] + 1;
                    des_arm += arm[i][j - 1];
                }
            }
        }
        let mut inv_count = 0usize;
        for j in 0..=height {
            for i in 0..n {
                if !self.has_box(i, j) {
                    continue;
                }
                for i2 in i + 1..n {
                    // Reading order visits (i2, j) before (i, j).
                    if self.has_box(i2, j) && self.label(i2, j) > self.label(i, j) {
                        inv_count += 1;
                    }
                    // (i, j) sits above and left of (i2, j - 1), so it is read first.
                    if j >= 1 && self.has_box(i2, j - 1) && self.label(i, j) > self.label(i2, j - 1) {
                        inv_count += 1;
                    }
                }
            }
        }
        let weak_asc = (0..n).flat_map(|i| (i + 1..n).map(move |k| (i, k))).filter(|&(i, k)| mu[i] <= mu[k]).count();
        let inv = inv_count as i64 - weak_asc as i64 - des_arm as i64;
        let coinv = arm_total as i64 - inv;
        FillingStats { maj, inv_count, inv, coinv, arm, arm_left, arm_right, leg }
    }

    /// The coefficient `q^{-maj} t^{coinv} prod (1-t)/(1 - q^{-(leg+1)} t^{a+1})`.
    pub fn weight(&self, row_one: RowOneFactor) -> RatQT {
        let st = self.stats();
        let mut w = RatQT::qt(-(st.maj as i64), st.coinv);
        let one_minus_t = RatQT::one() - RatQT::t();
        for i in 0..self.shape.len() {
            for j in 1..=self.shape[i] {
                if self.label(i, j) == self.label(i, j - 1) {
                    continue;
                }
                let leg = st.leg[i][j - 1] as i64;
                let a = st.arm[i][j - 1] as i64;
                let shift = match (j, row_one) {
                    (1, RowOneFactor::Stable) => {
                        w = &w * &one_minus_t;
                        continue;
                    }
                    (1, RowOneFactor::Shifted(s)) => s as i64,
                    _ => 0,
                };
                let den = RatQT::one() - RatQT::qt(-(leg + 1), a + shift + 1);
                w = &w * &(&one_minus_t / &den);
            }
        }
        w
    }
}

/// All non-attacking fillings of `shape` with labels in `1..=n_labels`.
///
/// With a tail constraint `nu`, the last `len(nu)` labels are tail labels and
/// tail label `n_labels - len(nu) + i` must be used exactly `nu_i` times.
pub fn enumerate_nonattacking(shape: &[usize], n_labels: usize, tail: Option<&[usize]>) -> Vec<Filling> {
    let n = shape.len();
    let height = shape.iter().copied().max().unwrap_or(0);
    let mut positions = Vec::new();
    for j in (1..=height).rev() {
        for i in (0..n).rev() {
            if shape[i] >= j {
                positions.push((i, j));
            }
        }
    }
    let tail = tail.unwrap_or(&[]);
    let base = n_labels.saturating_sub(tail.len());
    let need: usize = tail.iter().sum();
    let mut st = Search {
        shape,
        n_labels,
        positions: &positions,
        grid: vec![vec![0usize; height + 1]; n],
        tail,
        base,
        used: vec![0; tail.len()],
        need_left: need,
        out: Vec::new(),
    };
    for (i, col) in st.grid.iter_mut().enumerate() {
        col[0] = i + 1;
    }
    st.rec(0);
    st.out
}

struct Search<'a> {
    shape: &'a [usize],
    n_labels: usize,
    positions: &'a [(usize, usize)],
    grid: Vec<Vec<usize>>,
    tail: &'a [usize],
    base: usize,
    used: Vec<usize>,
    need_left: usize,
    out: Vec<Filling>,
}

impl Search<'_> {
    fn ok(&self, i: usize, j: usize, l: usize) -> bool {
        let n = self.shape.len();
        for i2 in i + 1..n {
            if self.shape[i2] >= j && self.grid[i2][j] == l {
                return false;
            }
            if self.shape[i2] + 1 >= j && self.grid[i2][j - 1] == l && j == 1 {
                return false;
            }
        }
        for i2 in 0..i {
            if self.shape[i2] > j && self.grid[i2][j + 1] == l {
                return false;
            }
        }
        true
    }

    fn rec(&mut self, k: usize) {
        if k == self.positions.len() {
            if self.need_left == 0 {
                let labels = (0..self.shape.len()).map(|i| self.grid[i][1..=self.shape[i]].to_vec()).collect();
                self.out.push(Filling { shape: self.shape.to_vec(), labels });
            }
            return;
        }
        if self.need_left > self.positions.len() - k {
            return;
        }
        let (i, j) = self.positions[k];
        for l in 1..=self.n_labels {
            if !self.ok(i, j, l) {
                continue;
            }
            let tail_idx = (l > self.base).then(|| l - self.base - 1);
            if let Some(t) = tail_idx {
                if self.used[t] == self.tail[t] {
                    continue;
                }
                self.used[t] += 1;
                self.need_left -= 1;
            }
            self.grid[i][j] = l;
            self.rec(k + 1);
            self.grid[i][j] = 0;
            if let Some(t) = tail_idx {
                self.used[t] -= 1;
                self.need_left += 1;
            }
        }
    }
}

/// Enumerates every label function and keeps the non-attacking ones.
pub fn enumerate_nonattacking_brute(shape: &[usize], n_labels: usize) -> Vec<Filling> {
    let boxes: usize = shape.iter().sum();
    let total = (n_labels as u64).pow(boxes as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let labels: Vec<Vec<usize>> = shape
            .iter()
            .map(|&h| {
                (0..h)
                    .map(|_| {
                        let l = (c % n_labels as u64) as usize + 1;
                        c /= n_labels as u64;
                        l
                    })
                    .collect()
            })
            .collect();
        let f = Filling { shape: shape.to_vec(), labels };
        if f.is_nonattacking() {
            out.push(f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_filling() -> Filling {
        Filling::new(vec![3, 2, 0, 1, 0, 0], vec![vec![1, 4, 6], vec![2, 1], vec![], vec![3], vec![], vec![]])
    }

    #[test]
    fn worked_example_statistics() {
        let f = paper_filling();
        assert!(f.is_nonattacking());
        let st = f.stats();
        assert_eq!(st.maj, 3);
        assert_eq!(st.inv_count, 21);
        assert_eq!(st.inv, 14);
        assert_eq!(st.coinv, 1);
        assert_eq!(st.arm[0][1], 2);
        assert_eq!(st.leg[0][1], 1);
        assert_eq!(f.label_counts(6), vec![2, 1, 1, 1, 0, 1]);
    }

    #[test]
    fn worked_example_weight() {
        let w = paper_filling().weight(RowOneFactor::Finite);
        let omt = RatQT::one() - RatQT::t();
        let f = |a: i64, b: i64| &omt / &(RatQT::one() - RatQT::qt(a, b));
        let expected = RatQT::qt(-3, 1) * f(-1, 3) * f(-1, 2) * f(-2, 3) * f(-1, 2);
        assert_eq!(w, expected);
    }

    #[test]
    fn empty_shape_has_one_filling() {
        let fs = enumerate_nonattacking(&[0, 0, 0], 3, None);
        assert_eq!(fs.len(), 1);
        let st = fs[0].stats();
        assert_eq!((st.maj, st.coinv), (0, 0));
        assert!(fs[0].weight(RowOneFactor::Finite).is_one());
    }

    #[test]
    fn partition_row_one_is_forced() {
        for shape in [vec![2, 1], vec![3, 2, 2], vec![2, 2, 1, 1]] {
            for f in enumerate_nonattacking(&shape, shape.len(), None) {
                for (i, col) in f.labels().iter().enumerate() {
                    assert_eq!(col[0], i + 1);
                }
            }
        }
    }

    #[test]
    fn pruned_enumeration_matches_brute_force() {
        for shape in [vec![2, 0, 1], vec![1, 2], vec![0, 2, 1], vec![2, 2], vec![1, 0, 2, 1], vec![3, 1, 0]] {
            let n = shape.len();
            let mut a = enumerate_nonattacking(&shape, n, None);
            let mut b = enumerate_nonattacking_brute(&shape, n);
            a.sort_by(|x, y| x.labels.cmp(&y.labels));
            b.sort_by(|x, y| x.labels.cmp(&y.labels));
            assert_eq!(a, b, "shape {shape:?}");
        }
    }

    #[test]
    fn worked_example_shape_count() {
        let shape = [3, 2, 0, 1, 0, 0];
        let fast = enumerate_nonattacking(&shape, 6, None).len();
        let brute = enumerate_nonattacking_brute(&shape, 6).len();
        assert_eq!(fast, brute);
        assert_eq!(fast, 160);
    }

    #[test]
    fn tail_constraint_filters_counts() {
        let shape = [2, 0];
        let all = enumerate_nonattacking(&shape, 2, None);
        let tail = enumerate_nonattacking(&shape, 2, Some(&[1]));
        let expected = all.iter().filter(|f| f.label_counts(2)[1] == 1).count();
        assert_eq!(tail.len(), expected);
    }
}
