#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use charp_core::quotient::{ParameterSystem, QuotientCtx, RingFlags};
use charp_core::{parse_poly, parse_poly_list, IdealHandle, Monomial, Poly, PolyRing};

/// Monomials of total degree at most `d` in `n` variables.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n {
            out.push(Monomial::from_exponents(prefix).unwrap());
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            rec(n, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Is the dense system `A x = b` (rows of `A` augmented by `b`) solvable
/// over `F_p`? Plain Gauss–Jordan elimination.
pub fn solvable(mut rows: Vec<Vec<u64>>, p: u64) -> bool {
    let cols = rows.first().map_or(0, |r| r.len() - 1);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let f = row[col];
                for (v, w) in row.iter_mut().zip(&pivot) {
                    *v = (*v + p - f * w % p) % p;
                }
            }
        }
        rank += 1;
    }
    rows[rank..].iter().all(|r| r[cols] == 0)
}

/// Degree-bounded membership: is `f = Σ h_i g_i` with every
/// `deg(h_i g_i) ≤ bound`? Sound for "member"; "not member" is relative to
/// the bound.
pub fn bounded_member(f: &Poly, gens: &[Poly], bound: u32) -> bool {
    let ring = f.ring();
    let p = ring.p();
    let n = ring.nvars();
    let targets = monomials_up_to(n, bound);
    let index: HashMap<Monomial, usize> = targets
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for g in gens {
        let dg = g.total_degree().unwrap_or(0);
        if dg > bound {
            continue;
        }
        for mu in monomials_up_to(n, bound - dg) {
            let mut col = vec![0u64; targets.len()];
            for (m, c) in g.terms() {
                col[index[&m.mul(&mu).unwrap()]] = *c;
            }
            columns.push(col);
        }
    }
    let mut rhs = vec![0u64; targets.len()];
    for (m, c) in f.terms() {
        match index.get(m) {
            Some(&i) => rhs[i] = *c,
            None => return false,
        }
    }
    let rows = (0..targets.len())
        .map(|i| {
            let mut row: Vec<u64> = columns.iter().map(|c| c[i]).collect();
            row.push(rhs[i]);
            row
        })
        .collect();
    solvable(rows, p)
}

/// Fedder's criterion for a hypersurface `S/(f)`: F-pure iff
/// `f^(p-1) ∉ m^[p]`, i.e. some monomial of `f^(p-1)` has every exponent
/// below `p`.
pub fn fedder_f_pure(f: &Poly) -> bool {
    let p = f.ring().p();
    let power = f.pow(p - 1).unwrap();
    power
        .terms()
        .iter()
        .any(|(m, _)| m.exponents().iter().all(|e| u64::from(*e) < p))
}

/// Coefficient of `x^(p-1) y^(p-1) z^(p-1)` in `(x^3+y^3+z^3)^(p-1)` from the
/// multinomial formula, reduced mod `p`. Zero unless `3 | p - 1`.
pub fn fermat_socle_coefficient(p: u64) -> u64 {
    if !(p - 1).is_multiple_of(3) {
        return 0;
    }
    let k = (p - 1) / 3;
    let fact = |n: u64| (1..=n).product::<u64>();
    fact(p - 1) / (fact(k) * fact(k) * fact(k)) % p
}

pub struct Corpus {
    pub name: &'static str,
    pub ctx: Arc<QuotientCtx>,
    pub frame: Arc<ParameterSystem>,
    pub c: Poly,
    /// Parameter ideals used by the verification harness.
    pub ideals: Vec<Vec<&'static str>>,
}

#[allow(clippy::too_many_arguments)]
fn build(
    name: &'static str,
    p: u64,
    vars: &[&str],
    j: &str,
    domain: bool,
    frame: &str,
    c: &str,
    ideals: Vec<Vec<&'static str>>,
) -> Corpus {
    let r = PolyRing::grevlex(p, vars).unwrap();
    let j = IdealHandle::new(&r, parse_poly_list(j, &r).unwrap()).unwrap();
    let flags = RingFlags {
        domain,
        cohen_macaulay: true,
        equidim_excellent: true,
    };
    let ctx = QuotientCtx::new(&r, j, flags).unwrap();
    let frame = ctx
        .validate_parameter_ideal(parse_poly_list(frame, &r).unwrap())
        .unwrap();
    Corpus {
        name,
        c: parse_poly(c, &r).unwrap(),
        ctx,
        frame,
        ideals,
    }
}

pub fn regular(p: u64) -> Corpus {
    let name = match p {
        2 => "regular2",
        3 => "regular3",
        _ => "regular7",
    };
    build(
        name,
        p,
        &["x", "y"],
        "",
        true,
        "x, y",
        "x",
        vec![
            vec!["x", "y"],
            vec!["x"],
            vec!["y"],
            vec!["x^2", "y"],
            vec!["x + y^2", "y"],
        ],
    )
}

pub fn fermat(p: u64) -> Corpus {
    let name = if p == 2 { "fermat2" } else { "fermat7" };
    build(
        name,
        p,
        &["z", "x", "y"],
        "x^3 + y^3 + z^3",
        true,
        "x, y",
        "x",
        vec![
            vec!["x", "y"],
            vec!["x^2", "y"],
            vec!["x", "y^2"],
            vec!["x"],
            vec!["x + y", "y"],
        ],
    )
}

pub fn node() -> Corpus {
    build(
        "node5",
        5,
        &["x", "y"],
        "x*y",
        false,
        "x + y",
        "x + y",
        vec![vec!["x + y"], vec!["x^2 + y"], vec!["x + y^3"]],
    )
}

pub fn all_corpus() -> Vec<Corpus> {
    vec![
        regular(2),
        regular(3),
        regular(7),
        fermat(7),
        fermat(2),
        node(),
    ]
}
