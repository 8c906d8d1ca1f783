//! Test curves in S̄_{g,1}⁻ and the linear system that determines the
//! class of Θ̄_{g,1}.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::matrix::{Matrix, Solution};
use crate::picard::{named_class, BasisClass, ClassDoc, DivisorClass, NamedClass, Space};

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    /// A genus-`i` spin curve moving along a fixed odd curve of genus `g − i`.
    F(u32),
    G(u32),
    F0,
    G0,
    K3Pencil,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveKind::F(i) => write!(f, "F_{i}"),
            CurveKind::G(i) => write!(f, "G_{i}"),
            CurveKind::F0 => write!(f, "F_0"),
            CurveKind::G0 => write!(f, "G_0"),
            CurveKind::K3Pencil => write!(f, "k3_pencil"),
        }
    }
}

impl CurveKind {
    /// Parses `F_i`, `G_i`, `F_0`, `G_0` or `k3_pencil`, taking `i` from
    /// the argument when the name has no index.
    pub fn parse(name: &str, i: Option<u32>) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        let (head, idx) = match lower.split_once('_') {
            Some((h, t)) if h == "f" || h == "g" => {
                (h.to_string(), Some(t.parse::<u32>().map_err(|_| Error::UnknownName(name.into()))?))
            }
            _ => (lower.clone(), i),
        };
        match (head.as_str(), idx) {
            ("f", Some(0)) => Ok(CurveKind::F0),
            ("g", Some(0)) => Ok(CurveKind::G0),
            ("f", Some(i)) => Ok(CurveKind::F(i)),
            ("g", Some(i)) => Ok(CurveKind::G(i)),
            ("f" | "g", None) => Err(Error::OutOfRange(format!("{name} needs an index"))),
            ("k3_pencil" | "k3", _) => Ok(CurveKind::K3Pencil),
            ("nu_family" | "nu", _) => {
                Err(Error::Unsupported("the ν-family enters only as two pullback relations".into()))
            }
            _ => Err(Error::UnknownName(name.into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestCurve {
    pub kind: CurveKind,
    pub space: Space,
    /// Intersection numbers with the canonical basis; unlisted ones are 0.
    pub vector: BTreeMap<BasisClass, Q>,
    pub provenance: &'static str,
}

impl TestCurve {
    pub fn new(kind: CurveKind, g: u32) -> Result<Self> {
        if g < 3 {
            return Err(Error::OutOfRange(format!("test curves need g ≥ 3, got {g}")));
        }
        let gi = g as i64;
        let space = Space::odd(g, 1)?;
        let alpha = |i: u32, s: u64| BasisClass::Alpha { i, s };
        let (terms, provenance): (Vec<(BasisClass, Q)>, _) = match kind {
            CurveKind::F(i) | CurveKind::G(i) if !(2..g).contains(&i) => {
                return Err(Error::OutOfRange(format!("{kind} needs 2 ≤ i ≤ g − 1 = {}", g - 1)));
            }
            CurveKind::F(i) => {
                (vec![(alpha(g - i, 1), Q::from_i64(2 - 2 * i as i64))], "marked point moving on the genus-i side")
            }
            CurveKind::G(i) => {
                (vec![(alpha(i, 0), Q::from_i64(2 - 2 * i as i64))], "attachment point moving on the genus-i side")
            }
            CurveKind::F0 => (
                vec![(BasisClass::Lambda, q(1, 1)), (alpha(1, 0), q(-1, 1)), (BasisClass::Alpha0, q(12, 1))],
                "pencil of pointed elliptic tails",
            ),
            CurveKind::G0 => (
                vec![
                    (BasisClass::Lambda, q(3, 1)),
                    (BasisClass::Beta { i: 1, s: 0 }, q(-3, 1)),
                    (BasisClass::Alpha0, q(12, 1)),
                    (BasisClass::Beta0, q(12, 1)),
                ],
                "elliptic tails with their three even structures",
            ),
            CurveKind::K3Pencil => (
                vec![
                    (BasisClass::Lambda, Q::from_i64(gi + 1)),
                    (BasisClass::Psi(1), q(2, 1)),
                    (BasisClass::Alpha0, Q::from_i64(4 * gi + 20)),
                    (BasisClass::Beta0, Q::from_i64(gi - 1)),
                ],
                "pencil of curves on a K3 surface",
            ),
        };
        let mut vector = BTreeMap::new();
        for (c, v) in terms {
            let c = space.canonical(c)?.ok_or_else(|| Error::InvalidBasisClass(c.to_string()))?;
            *vector.entry(c).or_insert_with(Q::zero) += v;
        }
        Ok(Self { kind, space, vector, provenance })
    }

    /// Parses the name (see [`CurveKind::parse`]) and builds the curve.
    pub fn named(name: &str, g: u32, i: Option<u32>) -> Result<Self> {
        Self::new(CurveKind::parse(name, i)?, g)
    }
}

/// Intersection number of a test curve with a class on a space of the
/// same type. Symmetrization does not matter for a single point.
pub fn intersect(curve: &TestCurve, cls: &DivisorClass) -> Result<Q> {
    let (a, b) = (curve.space, cls.space());
    if a.kind != b.kind || a.g != b.g || a.n != b.n {
        return Err(Error::IncompatibleSpace(format!("{} lives on {a}, class on {b}", curve.kind)));
    }
    cls.pair(&curve.vector)
}

/// Switches for [`solve_theta_system`].
#[derive(Clone, Copy, Debug)]
pub struct ThetaSystem {
    pub g: u32,
    pub pushforward: bool,
    pub nu_relations: bool,
}

impl ThetaSystem {
    pub fn new(g: u32) -> Self {
        Self { g, pushforward: true, nu_relations: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaReport {
    pub g: u32,
    pub system_rank: usize,
    pub unknown_count: usize,
    pub equation_count: usize,
    pub consistent: bool,
    /// Dimension of the affine solution set; `None` when inconsistent.
    pub solution_dimension: Option<usize>,
    pub solution: Option<ClassDoc>,
    pub solution_display: Option<String>,
    pub matches_paper: bool,
    #[serde(skip)]
    pub class: Option<DivisorClass>,
}

/// Solves for Θ̄_{g,1} with every relation switched on.
pub fn solve_theta_coefficients(g: u32) -> Result<ThetaReport> {
    solve_theta_system(ThetaSystem::new(g))
}

/// Writes `Θ̄ = Σ x_c·c` over the basis of S̄_{g,1}⁻ and imposes:
/// `x_λ = 1/4`, `x_ψ = 1/2`; `F_i·Θ̄ = 0` and `G_i·Θ̄ = i − 1` for
/// `2 ≤ i ≤ g − 1`; `F_0·Θ̄ = G_0·Θ̄ = 0`; the two ν relations; and the
/// pushforward relation for the `δ_irr` coefficient.
pub fn solve_theta_system(opts: ThetaSystem) -> Result<ThetaReport> {
    let g = opts.g;
    let sp = Space::odd(g, 1)?;
    let basis = sp.basis();
    let idx: BTreeMap<BasisClass, usize> = basis.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let mut eqs: Vec<(String, BTreeMap<BasisClass, Q>, Q)> = Vec::new();
    let canon = |terms: Vec<(BasisClass, Q)>| -> Result<BTreeMap<BasisClass, Q>> {
        let mut out = BTreeMap::new();
        for (c, v) in terms {
            if let Some(c) = sp.canonical(c)? {
                *out.entry(c).or_insert_with(Q::zero) += v;
            }
        }
        Ok(out)
    };
    eqs.push(("axiom λ".into(), canon(vec![(BasisClass::Lambda, Q::one())])?, q(1, 4)));
    eqs.push(("axiom ψ".into(), canon(vec![(BasisClass::Psi(1), Q::one())])?, q(1, 2)));
    for i in 2..g {
        let f = TestCurve::new(CurveKind::F(i), g)?;
        eqs.push((f.kind.to_string(), f.vector, Q::zero()));
        let gc = TestCurve::new(CurveKind::G(i), g)?;
        eqs.push((gc.kind.to_string(), gc.vector, Q::from_i64(i as i64 - 1)));
    }
    for k in [CurveKind::F0, CurveKind::G0] {
        let c = TestCurve::new(k, g)?;
        eqs.push((k.to_string(), c.vector, Q::zero()));
    }
    let a11 = BasisClass::Alpha { i: 1, s: 1 };
    let a10 = BasisClass::Alpha { i: 1, s: 0 };
    if opts.nu_relations {
        eqs.push((
            "ν ψ_y".into(),
            canon(vec![
                (BasisClass::Lambda, q(1, 1)),
                (BasisClass::Psi(1), q(1, 1)),
                (BasisClass::Alpha0, q(12, 1)),
                (a11, q(-1, 1)),
            ])?,
            Q::zero(),
        ));
        eqs.push((
            "ν δ_{0:yq}".into(),
            canon(vec![(BasisClass::Lambda, q(-1, 1)), (BasisClass::Alpha0, q(-12, 1)), (a10, q(1, 1))])?,
            Q::zero(),
        ));
    }
    if opts.pushforward {
        let two = Q::from_i64(2);
        let g64 = g as u64;
        let a = two.pow_u64(2 * g64 - 2);
        let b = two.pow_u64(g64 - 2) * (two.pow_u64(g64 - 1) - Q::one());
        eqs.push((
            "pushforward δ_irr".into(),
            canon(vec![(BasisClass::Alpha0, a), (BasisClass::Beta0, b)])?,
            -two.pow_u64(2 * g64 - 6),
        ));
    }

    let rows: Vec<Vec<Q>> = eqs
        .iter()
        .map(|(_, v, _)| {
            let mut r = vec![Q::zero(); basis.len()];
            for (c, x) in v {
                r[idx[c]] = x.clone();
            }
            r
        })
        .collect();
    let rhs: Vec<Q> = eqs.iter().map(|(_, _, r)| r.clone()).collect();
    let m = Matrix::from_rows(rows)?;
    let system_rank = m.rank();
    let sol = m.solve(&rhs)?;
    let (consistent, dim, class) = match &sol {
        Solution::Inconsistent => (false, None, None),
        Solution::Unique(x) => {
            let cls = DivisorClass::from_terms(sp, basis.iter().copied().zip(x.iter().cloned()))?;
            (true, Some(0), Some(cls))
        }
        Solution::Affine { kernel, .. } => (true, Some(kernel.len()), None),
    };
    let expected = named_class(NamedClass::ThetaG1, sp)?;
    let matches_paper = class.as_ref() == Some(&expected);
    Ok(ThetaReport {
        g,
        system_rank,
        unknown_count: basis.len(),
        equation_count: eqs.len(),
        consistent,
        solution_dimension: dim,
        solution: class.as_ref().map(DivisorClass::to_doc),
        solution_display: class.as_ref().map(|c| c.to_string()),
        matches_paper,
        class,
    })
}
