//! Linear algebra over `Z/p^k`.
//!
//! Submodules of `(Z/p^k)^m` are kept in a Howell-style echelon form: every
//! row has its pivot equal to a power of `p`, pivots sit in strictly
//! increasing columns, and for a row with pivot `p^a` the multiple
//! `p^(k-a) * row` (which vanishes at the pivot) lies in the span of the
//! later rows. With that closure property, reduction decides membership and
//! the rows with pivot at or after column `j` span exactly the elements of
//! the module whose first `j` coordinates vanish.
//!
//! `k = 1` gives ordinary echelon forms over `GF(p)`; [`rref_gf`] adds the
//! fully reduced variant used by the p-quotient tail elimination.

/// The ring `Z/p^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModRing {
    p: u64,
    k: u32,
    n: u64,
}

impl ModRing {
    pub fn new(p: u64, k: u32) -> Self {
        assert!(p >= 2 && k >= 1);
        Self {
            p,
            k,
            n: p.pow(k),
        }
    }

    /// Ring `Z/n` where `n` must be a power of `p`.
    pub fn for_modulus(p: u64, n: u64) -> Self {
        let mut k = 0;
        let mut m = 1;
        while m < n {
            m *= p;
            k += 1;
        }
        assert_eq!(m, n, "{n} is not a power of {p}");
        Self::new(p, k.max(1))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.n as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.n
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.n - b) % self.n
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.n
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.n - a) % self.n
    }

    /// p-adic valuation of a nonzero residue (capped at `k` for zero).
    pub fn valuation(&self, mut a: u64) -> u32 {
        a %= self.n;
        if a == 0 {
            return self.k;
        }
        let mut v = 0;
        while a % self.p == 0 {
            a /= self.p;
            v += 1;
        }
        v
    }

    /// Inverse of a unit.
    pub fn inv(&self, a: u64) -> u64 {
        let (g, x, _) = ext_gcd(a as i64 % self.n as i64, self.n as i64);
        assert_eq!(g, 1, "{a} is not a unit mod {}", self.n);
        x.rem_euclid(self.n as i64) as u64
    }

    /// Writes `a = p^v * u` with `u` a unit; returns `(v, u)`.
    pub fn split(&self, a: u64) -> (u32, u64) {
        let v = self.valuation(a);
        let u = (a % self.n) / self.p.pow(v);
        (v, u % self.n)
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Echelon basis of a submodule of `(Z/p^k)^width`.
#[derive(Clone, Debug)]
pub struct Howell {
    ring: ModRing,
    width: usize,
    rows: Vec<Option<Vec<u64>>>,
    // valuation of each pivot
    pivots: Vec<u32>,
}

impl Howell {
    pub fn new(ring: ModRing, width: usize) -> Self {
        Self {
            ring,
            width,
            rows: vec![None; width],
            pivots: vec![0; width],
        }
    }

    pub fn from_rows<I: IntoIterator<Item = Vec<u64>>>(ring: ModRing, width: usize, rows: I) -> Self {
        let mut h = Self::new(ring, width);
        for r in rows {
            h.insert(r);
        }
        h
    }

    pub fn ring(&self) -> ModRing {
        self.ring
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Adds a vector to the module. Returns true if the module grew.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.width);
        let r = self.ring;
        let mut grew = false;
        let mut queue = vec![v];
        while let Some(mut v) = queue.pop() {
            let mut col = 0;
            while col < self.width {
                let entry = v[col] % r.n;
                if entry == 0 {
                    col += 1;
                    continue;
                }
                let (b, u) = r.split(entry);
                match &self.rows[col] {
                    Some(row) if self.pivots[col] <= b => {
                        let a = self.pivots[col];
                        let factor = r.mul(u, r.p.pow(b - a));
                        subtract_scaled(r, &mut v, row, factor, col);
                        col += 1;
                    }
                    _ => {
                        // install v (normalised) as the row for this column
                        let uinv = r.inv(u);
                        let mut nv: Vec<u64> = v.iter().map(|&x| r.mul(x, uinv)).collect();
                        nv[col] = r.p.pow(b);
                        let old = self.rows[col].take();
                        let old_piv = self.pivots[col];
                        if r.k > b {
                            let m = r.p.pow(r.k - b);
                            let mut ann: Vec<u64> = nv.iter().map(|&x| r.mul(x, m)).collect();
                            ann[col] = 0;
                            queue.push(ann);
                        }
                        if let Some(mut old) = old {
                            let factor = r.p.pow(old_piv - b);
                            subtract_scaled(r, &mut old, &nv, factor, col);
                            queue.push(old);
                        }
                        self.rows[col] = Some(nv);
                        self.pivots[col] = b;
                        grew = true;
                        break;
                    }
                }
            }
        }
        grew
    }

    /// Reduces `v` against the rows; returns the remainder (zero iff member).
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let r = self.ring;
        let mut v: Vec<u64> = v.iter().map(|&x| x % r.n).collect();
        for col in 0..self.width {
            if v[col] == 0 {
                continue;
            }
            let Some(row) = &self.rows[col] else {
                return v;
            };
            let (b, u) = r.split(v[col]);
            let a = self.pivots[col];
            if b < a {
                return v;
            }
            let factor = r.mul(u, r.p.pow(b - a));
            subtract_scaled(r, &mut v, row, factor, col);
        }
        v
    }

    /// Coefficients expressing `v` in terms of [`Self::rows`], or `None`.
    pub fn solve(&self, v: &[u64]) -> Option<Vec<(usize, u64)>> {
        let r = self.ring;
        let mut v: Vec<u64> = v.iter().map(|&x| x % r.n).collect();
        let mut coeffs = Vec::new();
        for col in 0..self.width {
            if v[col] == 0 {
                continue;
            }
            let row = self.rows[col].as_ref()?;
            let (b, u) = r.split(v[col]);
            let a = self.pivots[col];
            if b < a {
                return None;
            }
            let factor = r.mul(u, r.p.pow(b - a));
            subtract_scaled(r, &mut v, row, factor, col);
            coeffs.push((col, factor));
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// `log_p` of the module order.
    pub fn log_order(&self) -> u32 {
        self.rows
            .iter()
            .zip(&self.pivots)
            .filter(|(r, _)| r.is_some())
            .map(|(_, &a)| self.ring.k - a)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Option::is_none)
    }

    /// Rows as `(pivot column, row)` in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &Vec<u64>)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.as_ref().map(|r| (c, r)))
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        self.rows().map(|(_, r)| r.clone()).collect()
    }

    pub fn pivot_valuation(&self, col: usize) -> Option<u32> {
        self.rows[col].as_ref().map(|_| self.pivots[col])
    }

    /// Sum of two submodules of the same ambient space.
    pub fn sum(&self, other: &Howell) -> Howell {
        let mut h = self.clone();
        for r in other.row_vecs() {
            h.insert(r);
        }
        h
    }

    /// `p^j * self`.
    pub fn scaled_by_p_power(&self, j: u32) -> Howell {
        let r = self.ring;
        let m = if j >= r.k { 0 } else { r.p.pow(j) };
        Howell::from_rows(
            r,
            self.width,
            self.row_vecs()
                .into_iter()
                .map(|row| row.into_iter().map(|x| r.mul(x, m)).collect()),
        )
    }
}

fn subtract_scaled(r: ModRing, v: &mut [u64], row: &[u64], factor: u64, from: usize) {
    if factor == 0 {
        return;
    }
    for c in from..v.len() {
        if row[c] != 0 {
            v[c] = r.sub(v[c], r.mul(factor, row[c]));
        }
    }
}

/// Invariant factors (as `p`-exponents, ascending) of `big / small`, where
/// `small` is a submodule of `big`.
pub fn quotient_invariants(big: &Howell, small: &Howell) -> Vec<u32> {
    let r = big.ring;
    let base = small.log_order();
    // o[j] = log_p |p^j big + small| - log_p |small|
    let mut o = Vec::with_capacity(r.k as usize + 1);
    for j in 0..=r.k {
        o.push(big.scaled_by_p_power(j).sum(small).log_order() - base);
    }
    let mut inv = Vec::new();
    // number of cyclic factors of order >= p^(j+1) is o[j] - o[j+1]
    for j in 0..r.k as usize {
        let ge_j1 = o[j] - o[j + 1];
        let ge_j2 = if j + 1 < r.k as usize { o[j + 1] - o[j + 2] } else { 0 };
        for _ in 0..(ge_j1 - ge_j2) {
            inv.push(j as u32 + 1);
        }
    }
    inv.sort_unstable();
    inv
}

/// Kernel of the linear map sending the `i`-th basis vector to `images[i]`
/// (each of length `target_width`).
pub fn kernel(ring: ModRing, images: &[Vec<u64>], target_width: usize) -> Howell {
    let c = images.len();
    let mut h = Howell::new(ring, target_width + c);
    for (i, img) in images.iter().enumerate() {
        let mut row = Vec::with_capacity(target_width + c);
        row.extend(img.iter().map(|&x| x % ring.n));
        row.extend((0..c).map(|j| u64::from(j == i)));
        h.insert(row);
    }
    let mut ker = Howell::new(ring, c);
    for (col, row) in h.rows() {
        if col >= target_width {
            ker.insert(row[target_width..].to_vec());
        }
    }
    ker
}

/// Solution space of the homogeneous system `rows * x = 0` in `(Z/p^k)^width`.
pub fn solve_homogeneous(ring: ModRing, width: usize, rows: impl IntoIterator<Item = Vec<u64>>) -> Howell {
    let eq = Howell::from_rows(ring, width, rows);
    let rows = eq.row_vecs();
    // column i of the equation matrix is the image of basis vector i
    let images: Vec<Vec<u64>> = (0..width)
        .map(|i| rows.iter().map(|r| r[i]).collect())
        .collect();
    kernel(ring, &images, rows.len())
}

/// Reduced row echelon form over `GF(p)`. Returns the nonzero rows and their
/// pivot columns; pivots are the lowest available column of each row.
pub fn rref_gf(p: u64, mut rows: Vec<Vec<u64>>, width: usize) -> (Vec<Vec<u64>>, Vec<usize>) {
    let r = ModRing::new(p, 1);
    let mut pivots = Vec::new();
    let mut out: Vec<Vec<u64>> = Vec::new();
    for row in rows.iter_mut() {
        for x in row.iter_mut() {
            *x %= p;
        }
    }
    let mut rank = 0;
    for col in 0..width {
        let Some(pos) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pos);
        let inv = r.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = r.mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (i, other) in rows.iter_mut().enumerate() {
            if i != rank && other[col] != 0 {
                let f = other[col];
                subtract_scaled(r, other, &pivot_row, f, col);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    out.extend(rows.into_iter().take(rank));
    (out, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_span(r: ModRing, gens: &[Vec<u64>], width: usize) -> std::collections::HashSet<Vec<u64>> {
        let mut set = std::collections::HashSet::new();
        set.insert(vec![0; width]);
        loop {
            let mut grew = false;
            let snapshot: Vec<_> = set.iter().cloned().collect();
            for v in &snapshot {
                for g in gens {
                    let w: Vec<u64> = v.iter().zip(g).map(|(&a, &b)| r.add(a, b)).collect();
                    if set.insert(w) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }

    #[test]
    fn order_matches_enumeration() {
        let r = ModRing::new(3, 2);
        let gens = vec![vec![3, 6, 1], vec![0, 3, 3], vec![6, 0, 2], vec![0, 0, 3]];
        let h = Howell::from_rows(r, 3, gens.clone());
        let span = brute_span(r, &gens, 3);
        assert_eq!(3u64.pow(h.log_order()) as usize, span.len());
        for v in &span {
            assert!(h.contains(v));
        }
        assert!(!h.contains(&[1, 0, 0]));
    }

    #[test]
    fn howell_prefix_property() {
        // rows with zero leading part must be recovered from the later rows
        let r = ModRing::new(2, 3);
        let h = Howell::from_rows(r, 2, vec![vec![4, 1]]);
        // 2*(4,1) = (0,2) lies in the module and has zero first coordinate
        assert!(h.rows().any(|(c, row)| c == 1 && row[1] == 2));
    }

    #[test]
    fn kernel_order_times_image_order() {
        let r = ModRing::new(3, 2);
        let images = vec![vec![3, 0], vec![1, 1], vec![0, 3], vec![4, 1]];
        let ker = kernel(r, &images, 2);
        let im = Howell::from_rows(r, 2, images.clone());
        assert_eq!(ker.log_order() + im.log_order(), 2 * 4);
        for (_, v) in ker.rows() {
            let mut s = [0u64; 2];
            for (i, &c) in v.iter().enumerate() {
                for t in 0..2 {
                    s[t] = r.add(s[t], r.mul(c, images[i][t]));
                }
            }
            assert_eq!(s, [0, 0]);
        }
    }

    #[test]
    fn invariants_of_quotient() {
        let r = ModRing::new(3, 2);
        let big = Howell::from_rows(r, 2, vec![vec![1, 0], vec![0, 1]]);
        let small = Howell::from_rows(r, 2, vec![vec![3, 0]]);
        assert_eq!(quotient_invariants(&big, &small), vec![1, 2]);
        let zero = Howell::new(r, 2);
        assert_eq!(quotient_invariants(&big, &zero), vec![2, 2]);
        assert!(quotient_invariants(&small, &small).is_empty());
    }

    #[test]
    fn rref_picks_lowest_pivots() {
        let (rows, piv) = rref_gf(3, vec![vec![0, 1, 2], vec![1, 1, 0], vec![1, 2, 2]], 3);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rows, vec![vec![1, 0, 1], vec![0, 1, 2]]);
    }
}
