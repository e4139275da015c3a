//! Necessary conditions for a group to be the fundamental group of a
//! compact Kähler manifold, evaluated on the degree one and two invariants.
//!
//! Every test only ever rules something out. The aggregate verdict is
//! `NOT_KAHLER`, `NOT_NONFIBERED_KAHLER` or `INCONCLUSIVE`; nothing here
//! certifies that a group is Kähler.

use std::fmt;

use crate::binomial2;
use crate::lie2::{self, classify_one_relator, Lie2Analysis, OneRelatorClass};
use crate::presentation::Presentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VerdictCode {
    NotKahler,
    NotNonfiberedKahler,
    FiberedExcluded,
    Inconclusive,
}

impl VerdictCode {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictCode::NotKahler => "NOT_KAHLER",
            VerdictCode::NotNonfiberedKahler => "NOT_NONFIBERED_KAHLER",
            VerdictCode::FiberedExcluded => "FIBERED_EXCLUDED",
            VerdictCode::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for VerdictCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The result a verdict rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Citation {
    /// Odd first Betti number.
    EvenRank,
    /// Free `Gr L_2` forces all cup products of degree-one classes to vanish.
    FreeGradedLie,
    /// A single relator of a Kähler group lies in `Gamma_2 \ Gamma_3`.
    OneRelatorFiltration,
    /// One- and two-relator Kähler groups have surface Malcev completions.
    LowRelatorSurface,
    /// Albanese dimension bound on the number of relations.
    AlbaneseBound,
    /// Upper bound on `dim Gamma_2/Gamma_3` for nonfibered Kähler groups.
    NonfiberedBound,
    /// The same bound restated as a lower bound on the number of relators.
    RelationCount,
    /// No surjection onto a genus >= 2 surface group survives the dimension count.
    FiberedExclusion,
    /// Nonfibered excluded and fibered excluded together.
    CombinedFibration,
}

impl Citation {
    pub fn label(self) -> &'static str {
        match self {
            Citation::EvenRank => "even-rank",
            Citation::FreeGradedLie => "Thm 3.3",
            Citation::OneRelatorFiltration => "Cor 3.4",
            Citation::LowRelatorSurface => "Thm 4.6",
            Citation::AlbaneseBound => "Prop 4.5+Thm 4.6",
            Citation::NonfiberedBound => "Prop 5.7",
            Citation::RelationCount => "Cor 5.8",
            Citation::FiberedExclusion => "Prop 5.3",
            Citation::CombinedFibration => "combined Prop 5.7/Cor 5.8+Prop 5.3",
        }
    }

    /// Citations allowed on a `NOT_KAHLER` verdict.
    pub fn concludes_not_kahler(self) -> bool {
        matches!(
            self,
            Citation::EvenRank
                | Citation::FreeGradedLie
                | Citation::OneRelatorFiltration
                | Citation::LowRelatorSurface
                | Citation::AlbaneseBound
                | Citation::CombinedFibration
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub code: VerdictCode,
    pub citation: Citation,
    pub detail: String,
}

impl Verdict {
    fn new(code: VerdictCode, citation: Citation, detail: String) -> Self {
        Verdict {
            code,
            citation,
            detail,
        }
    }
}

/// The numbers the tests read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub n: usize,
    pub s: usize,
    pub k: usize,
    pub q: usize,
    pub dim2: usize,
    pub dim_ker_d0: usize,
    pub dim_ker_d1: usize,
    pub dim_w: usize,
    pub grl_free: bool,
    pub surface_genus: Option<usize>,
    pub one_relator_class: Option<OneRelatorClass>,
}

impl Invariants {
    pub fn from_analysis(p: &Presentation, a: &Lie2Analysis) -> Self {
        Invariants {
            n: p.n(),
            s: p.s(),
            k: a.d0.rank,
            q: a.d0.q(),
            dim2: a.grl.dim2,
            dim_ker_d0: a.d0.dim_kernel(),
            dim_ker_d1: a.d1.dim_ker_d1,
            dim_w: a.d1.dim_w,
            grl_free: a.grl_free,
            surface_genus: a.surface_genus,
            one_relator_class: classify_one_relator(p).ok(),
        }
    }
}

pub fn test_even_rank(q: usize) -> Option<Verdict> {
    (q % 2 == 1).then(|| {
        Verdict::new(
            VerdictCode::NotKahler,
            Citation::EvenRank,
            format!("dim H^1 = q = {q} is odd"),
        )
    })
}

pub fn test_free_grl(q: usize, grl_free: bool) -> Option<Verdict> {
    (grl_free && q >= 1).then(|| {
        Verdict::new(
            VerdictCode::NotKahler,
            Citation::FreeGradedLie,
            format!(
                "Gr L_2 is free on q = {q} generators: dim W = 0, dim Gamma_2/Gamma_3 = C({q},2) = {}",
                binomial2(q)
            ),
        )
    })
}

/// Presentations with at most two relators: either `q = 0` or the graded
/// algebra must be that of a surface.
pub fn test_low_relator(
    s: usize,
    q: usize,
    surface_match: Option<usize>,
    one_relator_class: Option<OneRelatorClass>,
) -> Option<Verdict> {
    if s > 2 || q == 0 || surface_match.is_some() {
        return None;
    }
    let citation = match one_relator_class {
        Some(OneRelatorClass::NotInGamma2) | Some(OneRelatorClass::InGamma3) if s == 1 => {
            Citation::OneRelatorFiltration
        }
        _ => Citation::LowRelatorSurface,
    };
    let mut detail =
        format!("s = {s} <= 2 relators, q = {q} != 0, and Gr L_2 is not that of a surface group");
    if let (Citation::OneRelatorFiltration, Some(c)) = (citation, one_relator_class) {
        detail.push_str(&format!("; the relator is {}", c.as_str()));
    }
    Some(Verdict::new(VerdictCode::NotKahler, citation, detail))
}

/// Largest `m` with `m = 1` or `2 C(m,2) + 1 <= dim ker d0`.
pub fn max_albanese_dim(dim_ker_d0: usize) -> usize {
    let mut m = 1;
    while 2 * binomial2(m + 1) < dim_ker_d0 {
        m += 1;
    }
    m
}

pub fn albanese_bound(
    dim_ker_d0: usize,
    q: usize,
    surface_match: Option<usize>,
) -> (usize, Option<Verdict>) {
    let m_max = max_albanese_dim(dim_ker_d0);
    let verdict = (q != 0 && m_max == 1 && surface_match.is_none()).then(|| {
        Verdict::new(
            VerdictCode::NotKahler,
            Citation::AlbaneseBound,
            format!(
                "dim ker d0 = {dim_ker_d0} < 2 C(2,2) + 1 = 3 forces Albanese dimension <= 1, \
                 but q = {q} != 0 and Gr L_2 is not that of a surface group"
            ),
        )
    });
    (m_max, verdict)
}

/// `b(b-1)/2 - 2(b-3) - (b-1)` with `b = dim H^1`. Can be negative.
pub fn nonfibered_dim2_bound(q: usize) -> i64 {
    let b = q as i64;
    b * (b - 1) / 2 - 2 * (b - 3) - (b - 1)
}

/// Only defined for even `q >= 2`.
pub fn test_nonfibered_bound(q: usize, dim2: usize) -> Option<Verdict> {
    if q < 2 || !q.is_multiple_of(2) {
        return None;
    }
    let bound = nonfibered_dim2_bound(q);
    (dim2 as i64 > bound).then(|| {
        Verdict::new(
            VerdictCode::NotNonfiberedKahler,
            Citation::NonfiberedBound,
            format!("dim Gamma_2/Gamma_3 = {dim2} > {q}({q}-1)/2 - 2({q}-3) - ({q}-1) = {bound}"),
        )
    })
}

/// `k + 2(n-k-3) + (n-k-1)`. Can be negative.
pub fn relation_count_bound(n: usize, k: usize) -> i64 {
    let (n, k) = (n as i64, k as i64);
    k + 2 * (n - k - 3) + (n - k - 1)
}

pub fn test_relation_count(n: usize, k: usize, s: usize) -> Option<Verdict> {
    let bound = relation_count_bound(n, k);
    ((s as i64) < bound).then(|| {
        Verdict::new(
            VerdictCode::NotNonfiberedKahler,
            Citation::RelationCount,
            format!("s = {s} < k + 2(n-k-3) + (n-k-1) = {bound} (n = {n}, k = {k})"),
        )
    })
}

/// Outcome of the dimension count for surjections onto surface groups of
/// genus `g >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberedExclusion {
    /// Genera with `2g <= q` whose `dim Gamma_2/Gamma_3` is too large.
    /// Larger genera are excluded by the degree-one count alone.
    pub excluded: Vec<usize>,
    pub admissible: Vec<usize>,
    pub all_excluded: bool,
}

pub fn surface_dim2(g: usize) -> usize {
    binomial2(2 * g) - 1
}

pub fn test_fibered_exclusion(q: usize, dim2: usize) -> FiberedExclusion {
    let (admissible, excluded): (Vec<usize>, Vec<usize>) =
        (2..=q / 2).partition(|&g| dim2 >= surface_dim2(g));
    FiberedExclusion {
        all_excluded: admissible.is_empty(),
        excluded,
        admissible,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub invariants: Invariants,
    pub m_max: usize,
    pub fibered: FiberedExclusion,
    /// Every verdict that fired, sorted by code then citation.
    pub verdicts: Vec<Verdict>,
    pub overall: VerdictCode,
}

/// Combines individual verdicts into the overall one. Independent of the
/// order of `verdicts`.
pub fn overall_verdict(verdicts: &[Verdict], fibered_all_excluded: bool) -> VerdictCode {
    let any = |code| verdicts.iter().any(|v| v.code == code);
    if any(VerdictCode::NotKahler) {
        VerdictCode::NotKahler
    } else if any(VerdictCode::NotNonfiberedKahler) {
        if fibered_all_excluded {
            VerdictCode::NotKahler
        } else {
            VerdictCode::NotNonfiberedKahler
        }
    } else {
        VerdictCode::Inconclusive
    }
}

pub fn aggregate(inv: &Invariants) -> ObstructionReport {
    let mut verdicts: Vec<Verdict> = Vec::new();
    verdicts.extend(test_even_rank(inv.q));
    verdicts.extend(test_free_grl(inv.q, inv.grl_free));
    verdicts.extend(test_low_relator(
        inv.s,
        inv.q,
        inv.surface_genus,
        inv.one_relator_class,
    ));
    let (m_max, albanese) = albanese_bound(inv.dim_ker_d0, inv.q, inv.surface_genus);
    verdicts.extend(albanese);
    verdicts.extend(test_nonfibered_bound(inv.q, inv.dim2));
    verdicts.extend(test_relation_count(inv.n, inv.k, inv.s));

    let fibered = test_fibered_exclusion(inv.q, inv.dim2);
    if fibered.all_excluded {
        verdicts.push(Verdict::new(
            VerdictCode::FiberedExcluded,
            Citation::FiberedExclusion,
            format!(
                "no genus g >= 2 has 2g <= q = {} and C(2g,2) - 1 <= dim Gamma_2/Gamma_3 = {}",
                inv.q, inv.dim2
            ),
        ));
        let nonfibered: Vec<&Verdict> = verdicts
            .iter()
            .filter(|v| v.code == VerdictCode::NotNonfiberedKahler)
            .collect();
        if !nonfibered.is_empty() {
            let reasons: Vec<&str> = nonfibered.iter().map(|v| v.citation.label()).collect();
            verdicts.push(Verdict::new(
                VerdictCode::NotKahler,
                Citation::CombinedFibration,
                format!(
                    "not nonfibered Kähler ({}) and cannot map onto any genus >= 2 surface group",
                    reasons.join(", ")
                ),
            ));
        }
    }

    verdicts.sort_by_key(|v| (v.code, v.citation));
    let overall = overall_verdict(&verdicts, fibered.all_excluded);
    ObstructionReport {
        invariants: inv.clone(),
        m_max,
        fibered,
        verdicts,
        overall,
    }
}

/// Runs the full pipeline on a presentation.
pub fn analyze_presentation(p: &Presentation) -> (Lie2Analysis, ObstructionReport) {
    let a = lie2::analyze(p);
    let report = aggregate(&Invariants::from_analysis(p, &a));
    (a, report)
}
