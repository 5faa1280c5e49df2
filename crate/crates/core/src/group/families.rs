//! Constructors for the standard families. Each lays out elements so that
//! index 0 is the identity.

use super::{GroupTable, MAX_ORDER};
use crate::error::{Error, Result};

fn build(n: usize, names: Vec<String>, aliases: Vec<(String, u8)>, mul: impl Fn(usize, usize) -> usize) -> Result<GroupTable> {
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let mut cells = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            cells[a * n + b] = mul(a, b) as u8;
        }
    }
    Ok(GroupTable::from_validated(n, cells, names, aliases))
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}{k}"),
    }
}

/// Cyclic group of order `n`; element `k` is `g^k`.
pub fn cyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::Family("cyclic order must be positive".into()));
    }
    let names = (0..n)
        .map(|k| if k == 0 { "1".to_string() } else { power_name("g", k) })
        .collect();
    build(n, names, Vec::new(), |a, b| (a + b) % n)
}

/// Dihedral group of the given (even) order `2m`: elements `r^k s^e` at index `k + m·e`.
pub fn dihedral(order: usize) -> Result<GroupTable> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::Family(format!("dihedral order must be even and >= 2, got {order}")));
    }
    let m = order / 2;
    let names = (0..order)
        .map(|i| {
            let (k, e) = (i % m, i / m);
            match (k, e) {
                (0, 0) => "1".to_string(),
                (_, 0) => power_name("r", k),
                _ => format!("{}s", power_name("r", k)),
            }
        })
        .collect();
    build(order, names, Vec::new(), |x, y| {
        let (a, e) = (x % m, x / m);
        let (b, f) = (y % m, y / m);
        let k = if e == 0 { (a + b) % m } else { (a + m - b) % m };
        k + m * ((e + f) % 2)
    })
}

/// Dicyclic group of order `4m`: `⟨a, x | a^{2m} = 1, x² = a^m, x a x⁻¹ = a⁻¹⟩`,
/// elements `a^k x^e` at index `k + 2m·e`. Order 8 is the quaternion group.
pub fn dicyclic(order: usize) -> Result<GroupTable> {
    if order < 4 || order % 4 != 0 {
        return Err(Error::Family(format!("dicyclic order must be a positive multiple of 4, got {order}")));
    }
    let m = order / 4;
    let r = 2 * m;
    let names = (0..order)
        .map(|i| {
            let (k, e) = (i % r, i / r);
            match (k, e) {
                (0, 0) => "1".to_string(),
                (_, 0) => power_name("a", k),
                _ => format!("{}x", power_name("a", k)),
            }
        })
        .collect();
    build(order, names, Vec::new(), |p, q| {
        let (k, e) = (p % r, p / r);
        let (l, f) = (q % r, q / r);
        match (e, f) {
            (0, _) => (k + l) % r + r * f,
            (_, 0) => (k + r - l) % r + r,
            _ => (k + r - l + m) % r,
        }
    })
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn cycle_name(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        s.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            s.push_str(&(i + 1).to_string());
            i = p[i] as usize;
        }
        s.push(')');
    }
    if s.is_empty() {
        "1".to_string()
    } else {
        s
    }
}

fn is_even(p: &[u8]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn permutation_group(perms: Vec<Vec<u8>>, aliases: &[(&str, Vec<u8>)]) -> Result<GroupTable> {
    let n = perms.len();
    let index = |p: &[u8]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    let names = perms.iter().map(|p| cycle_name(p)).collect();
    let aliases = aliases
        .iter()
        .filter_map(|(a, p)| perms.binary_search(p).ok().map(|i| (a.to_string(), i as u8)))
        .collect();
    // (p·q)(i) = p(q(i))
    let compose: Vec<usize> = (0..n * n)
        .map(|ij| {
            let (p, q) = (&perms[ij / n], &perms[ij % n]);
            let pq: Vec<u8> = q.iter().map(|&qi| p[qi as usize]).collect();
            index(&pq)
        })
        .collect();
    build(n, names, aliases, |a, b| compose[a * n + b])
}

fn standard_aliases(n: usize) -> Vec<(&'static str, Vec<u8>)> {
    let mut out = Vec::new();
    if n >= 2 {
        out.push(("r", (0..n as u8).map(|i| (i + 1) % n as u8).collect()));
        let mut s: Vec<u8> = (0..n as u8).collect();
        s.swap(0, 1);
        out.push(("s", s));
    }
    out
}

/// Symmetric group on `n <= 5` points; elements named in cycle notation.
/// `r` aliases the `n`-cycle `(1 2 … n)` and `s` the transposition `(1 2)`.
pub fn symmetric(n: usize) -> Result<GroupTable> {
    if n == 0 || n > 5 {
        return Err(Error::Family(format!("symmetric degree must be in 1..=5, got {n}")));
    }
    permutation_group(permutations(n), &standard_aliases(n))
}

/// Alternating group on `n <= 5` points.
pub fn alternating(n: usize) -> Result<GroupTable> {
    if n == 0 || n > 5 {
        return Err(Error::Family(format!("alternating degree must be in 1..=5, got {n}")));
    }
    let perms = permutations(n).into_iter().filter(|p| is_even(p)).collect();
    permutation_group(perms, &[])
}

/// `A × B`, with `(a, b)` at index `a·|B| + b` and named `a:b`.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let names = (0..n)
        .map(|i| {
            if i == 0 {
                "1".to_string()
            } else {
                let (x, y) = (i / nb, i % nb);
                format!("{}:{}", a.names()[x], b.names()[y])
            }
        })
        .collect();
    build(n, names, Vec::new(), |x, y| {
        a.mul_idx(x / nb, y / nb) * nb + b.mul_idx(x % nb, y % nb)
    })
}
