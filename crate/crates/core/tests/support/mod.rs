//! Reference implementations for the tests.
//!
//! Everything here works on machine words and never calls the library, so a
//! test comparing the two compares independent computations.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use hkit_core::IntMatrix;

pub type Mat = Vec<Vec<i64>>;

pub fn to_matrix(m: &[Vec<i64>], cols: usize) -> IntMatrix {
    IntMatrix::from_rows(cols, m.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect()).unwrap()
}

pub fn from_matrix(m: &IntMatrix) -> Mat {
    m.iter_rows().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect()
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| gcd(g as i128, x as i128) as i64)
}

pub fn is_primitive(v: &[i64]) -> bool {
    content(v) == 1
}

/// Primitive part with first nonzero entry positive.
pub fn canonical(v: &[i64]) -> Vec<i64> {
    let c = content(v);
    assert!(c != 0, "zero vector has no direction");
    let sign = if v.iter().find(|&&x| x != 0).unwrap() < &0 { -1 } else { 1 };
    v.iter().map(|&x| sign * x / c).collect()
}

/// Rank over Q by fraction-free elimination.
pub fn rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            let (x, y) = (a[r][c], a[i][c]);
            let pivot = a[r].clone();
            for (v, p) in a[i].iter_mut().zip(&pivot) {
                *v = *v * x - p * y;
            }
            let g = a[i].iter().fold(0, |g, &v| gcd(g, v));
            if g > 1 {
                a[i].iter_mut().for_each(|v| *v /= g);
            }
        }
        r += 1;
    }
    r
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<i64>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0] as i128,
        2 => m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128,
        k => (0..k)
            .filter(|&j| m[0][j] != 0)
            .map(|j| {
                let minor: Mat = m[1..].iter().map(|r| [&r[..j], &r[j + 1..]].concat()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] as i128 * det(&minor)
            })
            .sum(),
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Maximal minors: `k×k` with `k = min(rows, cols)`.
pub fn maximal_minors(m: &[Vec<i64>], cols: usize) -> Vec<i128> {
    let rows = m.len();
    if rows <= cols {
        subsets(cols, rows)
            .iter()
            .map(|s| det(&m.iter().map(|r| s.iter().map(|&j| r[j]).collect()).collect::<Mat>()))
            .collect()
    } else {
        subsets(rows, cols).iter().map(|s| det(&s.iter().map(|&i| m[i].clone()).collect::<Mat>())).collect()
    }
}

pub fn is_unimodular(m: &[Vec<i64>], cols: usize) -> bool {
    let minors = maximal_minors(m, cols);
    minors.iter().all(|d| d.abs() <= 1) && minors.iter().any(|&d| d != 0)
}

/// `B` (N×n) is injective with torsion-free cokernel iff its n×n minors have gcd 1.
pub fn is_saturated(b: &[Vec<i64>], n: usize) -> bool {
    b.len() >= n && maximal_minors(b, n).into_iter().fold(0, gcd) == 1
}

/// `x ∈ B·Zⁿ`, for `B` with torsion-free cokernel.
pub fn in_image(b: &[Vec<i64>], x: &[i64]) -> bool {
    let joined: Mat = b.iter().zip(x).map(|(r, &xi)| [r.as_slice(), &[xi]].concat()).collect();
    rank(&joined) == rank(b)
}

/// Discriminant walls of `B` found by probing lattice points.
///
/// At a point `η` the stabilizer is spanned by the rows `bᵢ` with
/// `⟨bᵢ, η⟩ = 0`. When those rows span a line, `η` is a general point of a
/// single wall whose multiplicity is the number of vanishing rows. Probing
/// grows the box until every direction among the rows has been seen.
pub fn probe_discriminant(b: &[Vec<i64>], n: usize) -> BTreeMap<Vec<i64>, u32> {
    assert!(b.len() <= 64);
    let wanted: BTreeSet<Vec<i64>> = b.iter().map(|r| canonical(r)).collect();
    let parallel = |x: &[i64], y: &[i64]| (0..n).all(|i| (i + 1..n).all(|j| x[i] * y[j] == x[j] * y[i]));
    let mut radius = 2i64;
    loop {
        let mut found: BTreeMap<Vec<i64>, u32> = BTreeMap::new();
        let mut seen: Vec<u64> = Vec::new();
        let mut eta = vec![-radius; n];
        'points: loop {
            // rows vanishing at η, as a bit mask
            let mut zero = 0u64;
            for (i, r) in b.iter().enumerate() {
                if r.iter().zip(&eta).map(|(x, y)| x * y).sum::<i64>() == 0 {
                    zero |= 1 << i;
                }
            }
            if zero != 0 && !seen.contains(&zero) {
                seen.push(zero);
                let first = &b[zero.trailing_zeros() as usize];
                let line = (0..b.len()).filter(|i| zero >> i & 1 == 1).all(|i| parallel(first, &b[i]));
                if line {
                    let m = zero.count_ones();
                    let previous = found.insert(canonical(first), m);
                    assert!(previous.is_none_or(|p| p == m), "stabilizer jumps along a wall");
                }
            }
            for x in eta.iter_mut() {
                *x += 1;
                if *x <= radius {
                    continue 'points;
                }
                *x = -radius;
            }
            break;
        }
        if found.len() == wanted.len() {
            return found;
        }
        radius *= 2;
        assert!(radius <= 64, "probing failed to reach every wall");
    }
}

/// Canonical primitive vectors of `[−r, r]ⁿ`, sorted.
pub fn canonical_vectors(n: usize, r: i64) -> Vec<Vec<i64>> {
    let side = (2 * r + 1) as usize;
    let mut out = BTreeSet::new();
    for k in 0..side.pow(n as u32) {
        let mut v = Vec::with_capacity(n);
        let mut rest = k;
        for _ in 0..n {
            v.push((rest % side) as i64 - r);
            rest /= side;
        }
        if is_primitive(&v) && canonical(&v) == v {
            out.insert(v);
        }
    }
    out.into_iter().collect()
}

/// Signed permutations of `n` coordinates, as (permutation, signs).
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, Vec<i64>)> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let mut out = Vec::new();
    for p in perms(n) {
        for mask in 0..(1u32 << n) {
            let signs = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            out.push((p.clone(), signs));
        }
    }
    out
}

pub fn apply_signed(v: &[i64], g: &(Vec<usize>, Vec<i64>)) -> Vec<i64> {
    (0..v.len()).map(|i| g.1[i] * v[g.0[i]]).collect()
}

/// Multisets of `1..=max_rows` canonical primitive rows of `[−r, r]ⁿ`, one per
/// orbit of the signed coordinate permutations. Reordering rows, flipping their
/// signs or permuting and negating coordinates does not change the
/// discriminant up to the same symmetry, so nothing is lost.
pub fn row_multisets(n: usize, r: i64, max_rows: usize) -> Vec<Mat> {
    let vectors = canonical_vectors(n, r);
    let index: HashMap<Vec<i64>, usize> = vectors.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let group = signed_permutations(n);
    let table: Vec<Vec<usize>> =
        group.iter().map(|g| vectors.iter().map(|v| index[&canonical(&apply_signed(v, g))]).collect()).collect();
    let orbit_min: Vec<usize> = (0..vectors.len()).map(|i| table.iter().map(|t| t[i]).min().unwrap()).collect();

    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut image = Vec::new();
    fn rec(
        start: usize,
        left: usize,
        cur: &mut Vec<usize>,
        image: &mut Vec<usize>,
        ctx: (&[Vec<usize>], &[usize], &[Vec<i64>]),
        out: &mut Vec<Mat>,
    ) {
        let (table, orbit_min, vectors) = ctx;
        if !cur.is_empty() && is_orbit_min(cur, table, image) {
            out.push(cur.iter().map(|&i| vectors[i].clone()).collect());
        }
        if left == 0 {
            return;
        }
        for (i, &least) in orbit_min.iter().enumerate().skip(start) {
            // the smallest row of a canonical multiset is below every image of every row
            if least < cur.first().copied().unwrap_or(i) {
                continue;
            }
            cur.push(i);
            rec(i, left - 1, cur, image, ctx, out);
            cur.pop();
        }
    }
    rec(0, max_rows, &mut cur, &mut image, (&table, &orbit_min, &vectors), &mut out);
    out
}

fn is_orbit_min(t: &[usize], table: &[Vec<usize>], image: &mut Vec<usize>) -> bool {
    for g in table {
        let first = t.iter().map(|&i| g[i]).min().unwrap();
        if first > t[0] {
            continue;
        }
        if first < t[0] {
            return false;
        }
        image.clear();
        image.extend(t.iter().map(|&i| g[i]));
        image.sort_unstable();
        if image.as_slice() < t {
            return false;
        }
    }
    true
}

/// Unimodular `B = [I_n; C]` with `C ∈ {−1,0,1}`, `N ≤ max_rows`, one per class
/// under row permutations, row signs and signed column permutations.
///
/// Every unimodular `B` of rank `n` has a unit `n×n` minor, so up to row
/// order and a change of basis of Zⁿ it has this shape; the remaining
/// entries are themselves minors and lie in `{−1,0,1}`.
pub fn unimodular_corpus(max_n: usize, max_rows: usize) -> Vec<Mat> {
    let mut out = Vec::new();
    for n in 1..=max_n.min(max_rows) {
        let candidates = canonical_vectors(n, 1);
        let group = signed_permutations(n);
        let mut seen = BTreeSet::new();
        let identity: Mat = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for extra in 0..=(max_rows - n) {
            for c in multisets(candidates.len(), extra) {
                let mut b = identity.clone();
                b.extend(c.iter().map(|&i| candidates[i].clone()));
                if !is_unimodular(&b, n) {
                    continue;
                }
                let key = group
                    .iter()
                    .map(|g| {
                        let mut rows: Mat = b.iter().map(|r| canonical(&apply_signed(r, g))).collect();
                        rows.sort();
                        rows
                    })
                    .min()
                    .unwrap();
                if seen.insert(key) {
                    out.push(b);
                }
            }
        }
    }
    out
}

/// Nondecreasing `k`-tuples over `0..n`.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Exponent vector `(u, v)` of an invariant monomial `z^u w^v`.
pub type Exponents = Vec<u32>;

/// Nonzero `(u, v)` of total degree at most `d` with `u − v ∈ B·Zⁿ`.
pub fn invariants_up_to(b: &[Vec<i64>], d: u32) -> BTreeSet<Exponents> {
    let big_n = b.len();
    let mut out = BTreeSet::new();
    let mut cur = vec![0u32; 2 * big_n];
    fn go(pos: usize, left: u32, cur: &mut Vec<u32>, b: &[Vec<i64>], out: &mut BTreeSet<Exponents>) {
        if pos == cur.len() {
            let big_n = b.len();
            let diff: Vec<i64> = (0..big_n).map(|i| cur[i] as i64 - cur[big_n + i] as i64).collect();
            if cur.iter().any(|&e| e > 0) && in_image(b, &diff) {
                out.insert(cur.clone());
            }
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            go(pos + 1, left - e, cur, b, out);
        }
        cur[pos] = 0;
    }
    go(0, d, &mut cur, b, &mut out);
    out
}

/// Whether `x` is a sum of elements of `basis`.
pub fn decomposes(x: &[u32], basis: &[Exponents], memo: &mut HashMap<Exponents, bool>) -> bool {
    if x.iter().all(|&e| e == 0) {
        return true;
    }
    if let Some(&known) = memo.get(x) {
        return known;
    }
    let ok = basis.iter().any(|g| {
        g.iter().zip(x).all(|(a, b)| a <= b) && {
            let rest: Vec<u32> = x.iter().zip(g).map(|(a, b)| a - b).collect();
            decomposes(&rest, basis, memo)
        }
    });
    memo.insert(x.to_vec(), ok);
    ok
}

/// No invariant `y` with `0 < y < g` componentwise.
pub fn irreducible(g: &[u32], b: &[Vec<i64>]) -> bool {
    let big_n = b.len();
    let total: usize = g.iter().map(|&e| e as usize + 1).product();
    (1..total - 1).all(|mut k| {
        let mut y = Vec::with_capacity(g.len());
        for &e in g {
            y.push((k % (e as usize + 1)) as i64);
            k /= e as usize + 1;
        }
        let diff: Vec<i64> = (0..big_n).map(|i| y[i] - y[big_n + i]).collect();
        !in_image(b, &diff)
    })
}
