//! Generators and relations for the invariant ring.
//!
//! The relation set is a truncated one: all binomials among generator
//! products up to twice the largest generator degree. It is not claimed to be
//! a minimal presentation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::hilbert::{hilbert_basis_with, Budget};
use super::{HypertoricData, MonomialGen};
use crate::lattice::{smith_normal_form, IntMatrix};
use crate::{Error, Int, LatticeVector, Result};

/// `Π gᵢ^lhsᵢ = Π gᵢ^rhsᵢ`, exponents indexed by generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binomial {
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
}

impl Binomial {
    pub fn degree(&self, generators: &[MonomialGen]) -> u32 {
        self.lhs.iter().zip(generators).map(|(e, g)| e * g.degree()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    /// The Hilbert basis, sorted.
    pub generators: Vec<MonomialGen>,
    /// Position of `sᵢ = zᵢwᵢ` among the generators; `None` when `sᵢ` factors.
    pub s_index: Vec<Option<usize>>,
    /// Balanced pairs of generator products with disjoint support.
    pub binomials: Vec<Binomial>,
    /// Row `j` is the linear relation `Σᵢ aⱼᵢ sᵢ = 0`; this is `A` itself.
    pub moment_relations: IntMatrix,
    /// Binomials were searched up to this total degree.
    pub degree_bound: u32,
}

impl Presentation {
    /// Whether the binomial balances exponents exactly.
    pub fn balances(&self, rel: &Binomial) -> bool {
        product(&self.generators, &rel.lhs) == product(&self.generators, &rel.rhs)
    }

    /// The presentation modulo the moment relations.
    ///
    /// The moment relations cut the span of `s₁, …, s_N` down to the image of
    /// `B`, so each `sᵢ` becomes the linear form `⟨bᵢ, σ⟩` in new variables
    /// `σ₁, …, σₙ`. Common linear factors are cancelled and trivial relations
    /// dropped.
    pub fn reduce(&self, b: &IntMatrix) -> ReducedPresentation {
        let pure: Vec<usize> = (0..self.generators.len()).filter(|i| !self.s_index.contains(&Some(*i))).collect();
        let s_of: BTreeMap<usize, usize> =
            self.s_index.iter().enumerate().filter_map(|(i, g)| g.map(|g| (g, i))).collect();
        let side = |exps: &[u32]| -> (Vec<u32>, Vec<LinearForm>, i8) {
            let mons = pure.iter().map(|&g| exps[g]).collect();
            let mut forms = Vec::new();
            let mut sign = 1i8;
            for (&g, &i) in &s_of {
                let normal = LatticeVector::new(b.row(i).to_vec());
                let flip = normal.leading_sign() < 0;
                for _ in 0..exps[g] {
                    forms.push(LinearForm(normal.canonical()));
                    if flip {
                        sign = -sign;
                    }
                }
            }
            forms.sort();
            (mons, forms, sign)
        };
        let mut relations = BTreeSet::new();
        for rel in &self.binomials {
            let (lhs, mut lf, ls) = side(&rel.lhs);
            let (rhs, mut rf, rs) = side(&rel.rhs);
            cancel_common(&mut lf, &mut rf);
            let sign = ls * rs;
            if lhs == rhs && lf == rf && sign == 1 {
                continue;
            }
            // orient so that the side with more pure generators is on the left
            let r = if (&lhs, &lf) >= (&rhs, &rf) {
                ReducedRelation { lhs, lhs_forms: lf, rhs, rhs_forms: rf, sign }
            } else {
                ReducedRelation { lhs: rhs, lhs_forms: rf, rhs: lhs, rhs_forms: lf, sign }
            };
            relations.insert(r);
        }
        ReducedPresentation {
            pure_generators: pure.iter().map(|&g| self.generators[g].clone()).collect(),
            torus_rank: b.cols(),
            relations: relations.into_iter().collect(),
        }
    }
}

fn cancel_common(a: &mut Vec<LinearForm>, b: &mut Vec<LinearForm>) {
    let mut i = 0;
    while i < a.len() {
        if let Some(j) = b.iter().position(|f| *f == a[i]) {
            a.remove(i);
            b.remove(j);
        } else {
            i += 1;
        }
    }
}

fn product(generators: &[MonomialGen], exps: &[u32]) -> MonomialGen {
    let n = generators.first().map_or(0, MonomialGen::len);
    let mut acc = MonomialGen::new(vec![0; n], vec![0; n]);
    for (g, &e) in generators.iter().zip(exps) {
        for _ in 0..e {
            acc = acc.mul(g);
        }
    }
    acc
}

/// `⟨b, σ⟩` with `b` sign-normalized.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm(pub LatticeVector);

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = self.0.coords();
        if coords.len() == 1 {
            return f.write_str("s");
        }
        let mut out = String::new();
        for (k, c) in coords.iter().enumerate() {
            if c == &Int::from(0) {
                continue;
            }
            let neg = c < &Int::from(0);
            let abs = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if abs != Int::from(1) {
                out.push_str(&format!("{abs}"));
            }
            out.push_str(&format!("s{}", k + 1));
        }
        write!(f, "({out})")
    }
}

/// `Π pᵢ^lhsᵢ · Π lhs_forms = sign · Π pᵢ^rhsᵢ · Π rhs_forms`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedRelation {
    pub lhs: Vec<u32>,
    pub lhs_forms: Vec<LinearForm>,
    pub rhs: Vec<u32>,
    pub rhs_forms: Vec<LinearForm>,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPresentation {
    /// Generators other than the `sᵢ`.
    pub pure_generators: Vec<MonomialGen>,
    /// Number of variables `σ` replacing the `sᵢ`.
    pub torus_rank: usize,
    pub relations: Vec<ReducedRelation>,
}

impl ReducedPresentation {
    pub fn generator_count(&self) -> usize {
        self.pure_generators.len() + self.torus_rank
    }

    /// `Some(m)` when the presentation is exactly `{p, q, s | p·q = sᵐ}`.
    pub fn klein_form(&self) -> Option<u32> {
        if self.torus_rank != 1 || self.pure_generators.len() != 2 || self.relations.len() != 1 {
            return None;
        }
        let r = &self.relations[0];
        let pq = r.lhs == [1, 1] && r.lhs_forms.is_empty();
        let power = r.rhs == [0, 0] && r.rhs_forms.iter().all(|f| f.0.coords() == [Int::from(1)]);
        (pq && power && r.sign == 1 && !r.rhs_forms.is_empty()).then_some(r.rhs_forms.len() as u32)
    }

    pub fn render_relation(&self, r: &ReducedRelation) -> String {
        let side = |mons: &[u32], forms: &[LinearForm]| {
            let mut parts: Vec<String> = Vec::new();
            for (g, &e) in self.pure_generators.iter().zip(mons) {
                match e {
                    0 => {}
                    1 => parts.push(format!("[{g}]")),
                    _ => parts.push(format!("[{g}]^{e}")),
                }
            }
            let mut k = 0;
            while k < forms.len() {
                let run = forms[k..].iter().take_while(|f| **f == forms[k]).count();
                if run == 1 {
                    parts.push(format!("{}", forms[k]));
                } else {
                    parts.push(format!("{}^{run}", forms[k]));
                }
                k += run;
            }
            if parts.is_empty() {
                String::from("1")
            } else {
                parts.join(" * ")
            }
        };
        let sign = if r.sign < 0 { "-" } else { "" };
        format!("{} = {sign}{}", side(&r.lhs, &r.lhs_forms), side(&r.rhs, &r.rhs_forms))
    }
}

/// Presentation with the default budget.
pub fn presentation(h: &HypertoricData) -> Result<Presentation> {
    presentation_with(h, Budget::default())
}

/// The candidate limit of `budget` also bounds the number of generator
/// products enumerated in the relation search.
pub fn presentation_with(h: &HypertoricData, budget: Budget) -> Result<Presentation> {
    let generators = hilbert_basis_with(h, budget)?;
    let big_n = h.num_coordinates();
    let s_index = (0..big_n).map(|i| generators.iter().position(|g| *g == MonomialGen::s(big_n, i))).collect();
    let max_deg = generators.iter().map(MonomialGen::degree).max().unwrap_or(0);
    let bound = 2 * max_deg;

    let mut groups: BTreeMap<Vec<u32>, Vec<Vec<u32>>> = BTreeMap::new();
    let mut exps = vec![0u32; generators.len()];
    let mut count = 0usize;
    let degrees: Vec<u32> = generators.iter().map(MonomialGen::degree).collect();
    let ok = products(&generators, &degrees, &mut exps, 0, bound, &mut groups, &mut count, budget.max_candidates);
    if !ok {
        return Err(Error::budget(
            format!("more than {} generator products below degree {bound}", budget.max_candidates),
            generators,
        ));
    }
    let mut binomials = BTreeSet::new();
    for members in groups.values() {
        for (i, x) in members.iter().enumerate() {
            for y in &members[i + 1..] {
                if x.iter().zip(y).all(|(a, b)| *a == 0 || *b == 0) {
                    let (lhs, rhs) = if x >= y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) };
                    binomials.insert(Binomial { lhs, rhs });
                }
            }
        }
    }
    Ok(Presentation {
        generators,
        s_index,
        binomials: binomials.into_iter().collect(),
        moment_relations: h.a().clone(),
        degree_bound: bound,
    })
}

#[allow(clippy::too_many_arguments)]
fn products(
    gens: &[MonomialGen],
    degrees: &[u32],
    exps: &mut [u32],
    pos: usize,
    left: u32,
    groups: &mut BTreeMap<Vec<u32>, Vec<Vec<u32>>>,
    count: &mut usize,
    limit: usize,
) -> bool {
    if pos == gens.len() {
        if exps.iter().any(|&e| e > 0) {
            *count += 1;
            if *count > limit {
                return false;
            }
            groups.entry(product(gens, exps).exponents()).or_default().push(exps.to_vec());
        }
        return true;
    }
    let d = degrees[pos].max(1);
    let mut e = 0;
    loop {
        exps[pos] = e;
        if !products(gens, degrees, exps, pos + 1, left - e * d, groups, count, limit) {
            return false;
        }
        if (e + 1) * d > left {
            break;
        }
        e += 1;
    }
    exps[pos] = 0;
    true
}

/// Rank bookkeeping for `dim Y(A,0) = 2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionCheck {
    /// Rank of the group generated by the monoid, `N + n`.
    pub group_rank: usize,
    /// Number of independent moment relations, `N − n`.
    pub moment_rank: usize,
    /// `group_rank − moment_rank`.
    pub dimension: usize,
}

/// Ranks from the Smith form of the stacked exponent vectors of `generators`.
pub fn dimension_check(h: &HypertoricData, generators: &[MonomialGen]) -> DimensionCheck {
    let width = 2 * h.num_coordinates();
    let rows = generators.iter().map(|g| g.exponents().into_iter().map(Int::from).collect()).collect();
    let m = IntMatrix::from_rows(width, rows).expect("exponent vectors share a length");
    let group_rank = smith_normal_form(&m).rank();
    let moment_rank = h.a().rank();
    DimensionCheck { group_rank, moment_rank, dimension: group_rank - moment_rank }
}
