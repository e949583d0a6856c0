use std::f64::consts::FRAC_1_SQRT_2 as HALF_SQRT2;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{
    Arity, Counterexample, Ctx, Group, InequalityEntry, Kind, Part, Relation, Requirement, Status,
};
use crate::error::Result;
use crate::instancegen::Witness;
use crate::interval::Interval;
use crate::linalg::{ComplexMatrix, C64};
use crate::radii;
use crate::semihilbert::AOperator;

/// Random vectors drawn per pointwise entry.
pub const POINTWISE_DRAWS: usize = 200;

/// Grid resolution per angle for the scalar supremum in L2 (100 × 100 points).
const L2_GRID: usize = 100;

fn k(v: f64) -> Interval {
    Interval::point(v)
}

/// Tolerance for the three-operator spot check, whose enclosure is heuristic.
fn tuple_tol(rhs: Interval) -> f64 {
    1e-2 * rhs.hi.abs().max(1e-5)
}

fn algebraic_eq(label: &str, x: &ComplexMatrix, y: &ComplexMatrix) -> Part {
    let scale = x.frobenius_norm().max(y.frobenius_norm()).max(1.0);
    Part::eq(label, k((x - y).frobenius_norm()), k(0.0)).with_tol(1e-9 * scale)
}

const fn entry(
    id: &'static str,
    arity: Arity,
    kind: Kind,
    group: Group,
    statement: &'static str,
    title: &'static str,
    eval: super::Evaluator,
) -> InequalityEntry {
    InequalityEntry {
        id,
        arity,
        kind,
        status: Status::Valid,
        group,
        requires: Requirement::None,
        statement,
        title,
        sharpness: None,
        counterexample: None,
        eval,
    }
}

fn gauss_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// A Gaussian vector rescaled to `‖x‖_A = 1`; `None` on a (measure-zero) null draw.
fn a_unit(ctx: &Ctx<'_>, rng: &mut ChaCha8Rng) -> Result<Option<Vec<C64>>> {
    let sp = ctx.space();
    let x = gauss_vec(rng, sp.dim());
    let s = sp.seminorm(&x)?;
    let scale = crate::linalg::norm(&x) * sp.eig().max_value().sqrt();
    if s <= 1e-8 * scale {
        return Ok(None);
    }
    Ok(Some(x.iter().map(|v| v / s).collect()))
}

/// `S` when present, otherwise `T♯`; the partner operator for pointwise lemmas.
fn partner<'s>(ctx: &mut Ctx<'s>) -> Result<AOperator<'s>> {
    if ctx.s().is_some() {
        ctx.op("S")
    } else {
        ctx.op("T#")
    }
}

/// Evaluates `draw` on [`POINTWISE_DRAWS`] seeded draws and keeps the worst part.
fn worst_draw(
    ctx: &mut Ctx<'_>,
    tag: &str,
    mut draw: impl FnMut(&mut Ctx<'_>, &mut ChaCha8Rng, usize) -> Result<Option<Part>>,
) -> Result<Vec<Part>> {
    let mut rng = ctx.rng(tag);
    let mut worst: Option<(f64, Part)> = None;
    for i in 0..POINTWISE_DRAWS {
        let Some(p) = draw(ctx, &mut rng, i)? else {
            continue;
        };
        let key = match p.relation {
            Relation::Le => p.rhs.hi - p.lhs.lo,
            Relation::Eq => -(p.lhs.mid() - p.rhs.mid()).abs(),
        };
        if worst.as_ref().is_none_or(|(w, _)| key < *w) {
            worst = Some((key, p));
        }
    }
    Ok(worst.into_iter().map(|(_, p)| p).collect())
}

/// Vectors `(a, b, c)`: independent Gaussians on even draws, `(x, Tx, Rx)` with
/// A-unit `x` and `R` the partner operator on odd draws.
fn triple(ctx: &mut Ctx<'_>, rng: &mut ChaCha8Rng, i: usize) -> Result<Option<[Vec<C64>; 3]>> {
    let n = ctx.space().dim();
    if i.is_multiple_of(2) {
        return Ok(Some([
            gauss_vec(rng, n),
            gauss_vec(rng, n),
            gauss_vec(rng, n),
        ]));
    }
    let Some(x) = a_unit(ctx, rng)? else {
        return Ok(None);
    };
    let tx = ctx.t().matrix().mat_vec(&x);
    let rx = partner(ctx)?.matrix().mat_vec(&x);
    Ok(Some([x, tx, rx]))
}

fn m4p_counterexample() -> Counterexample {
    Counterexample {
        witness: Witness {
            a: ComplexMatrix::identity(2),
            t: ComplexMatrix::identity(2),
            s: Some(ComplexMatrix::identity(2)),
        },
        expected_slack: HALF_SQRT2 * 3f64.sqrt() - 2f64.sqrt(),
    }
}

fn m7p_counterexample() -> Counterexample {
    Counterexample {
        witness: Witness {
            a: ComplexMatrix::identity(2),
            t: ComplexMatrix::from_diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)]),
            s: None,
        },
        expected_slack: 0.5 * 2.5f64.sqrt() - 1.0,
    }
}

fn m1p_counterexample() -> Counterexample {
    let half = ComplexMatrix::identity(2).scale_re(0.5);
    Counterexample {
        witness: Witness {
            a: ComplexMatrix::identity(2),
            t: half.clone(),
            s: Some(half),
        },
        expected_slack: 0.5 - HALF_SQRT2,
    }
}

static REGISTRY: &[InequalityEntry] = &[
    // ---- background ----
    entry(
        "B1",
        Arity::T,
        Kind::Bound,
        Group::Background,
        "½‖T‖_A ≤ ω_A(T) ≤ ‖T‖_A",
        "equivalence of the A-numerical radius and the A-seminorm",
        |c| {
            let (n, w) = (c.norm("T")?, c.omega("T")?);
            Ok(vec![Part::le("lower", n.scale(0.5), w), Part::le("upper", w, n)])
        },
    ),
    entry(
        "B2",
        Arity::T,
        Kind::Bound,
        Group::Background,
        "ω_A(Tⁿ) ≤ ω_A(T)ⁿ for n = 2, 3, 4",
        "power inequality",
        |c| {
            let w = c.omega("T")?;
            Ok(vec![
                Part::le("n=2", c.omega("T^2")?, w.powi(2)),
                Part::le("n=3", c.omega("T^3")?, w.powi(3)),
                Part::le("n=4", c.omega("T^4")?, w.powi(4)),
            ])
        },
    ),
    entry(
        "B3",
        Arity::T,
        Kind::Bound,
        Group::Background,
        "‖XY‖_A ≤ ‖X‖_A‖Y‖_A for (X, Y) = (T, T), (T, T♯), (T, S)",
        "submultiplicativity of the A-seminorm",
        |c| {
            let nt = c.norm("T")?;
            let mut parts = vec![
                Part::le("T,T", c.norm("T^2")?, nt.sqr()),
                Part::le("T,T#", c.norm("TT#")?, nt * c.norm("T#")?),
            ];
            if c.s().is_some() {
                parts.push(Part::le("T,S", c.norm("TS")?, nt * c.norm("S")?));
            }
            Ok(parts)
        },
    ),
    InequalityEntry {
        requires: Requirement::SelfAdjointT,
        ..entry(
            "B4",
            Arity::T,
            Kind::Equality,
            Group::Background,
            "‖T‖_A = ω_A(T) for A-selfadjoint T",
            "A-selfadjoint operators attain the seminorm",
            |c| Ok(vec![Part::eq("norm=omega", c.norm("T")?, c.omega("T")?)]),
        )
    },
    entry(
        "B5",
        Arity::T,
        Kind::Equality,
        Group::Background,
        "‖T♯T‖_A = ‖TT♯‖_A = ‖T‖_A² = ‖T♯‖_A²",
        "seminorms of the A-adjoint products",
        |c| {
            let sq = c.norm("T")?.sqr();
            Ok(vec![
                Part::eq("T#T", c.norm("T#T")?, sq),
                Part::eq("TT#", c.norm("TT#")?, sq),
                Part::eq("T#", c.norm("T#")?.sqr(), sq),
            ])
        },
    ),
    entry(
        "B6",
        Arity::TS,
        Kind::Bound,
        Group::Background,
        "(2√d)⁻¹‖Σ T_k♯T_k‖^{1/2} ≤ ω_{A,e}(T_1..T_d) ≤ ‖Σ T_k♯T_k‖^{1/2}, d = 2 on (T, S) and d = 3 on (T, S, TS)",
        "joint radius against the sum of A-adjoint products",
        |c| {
            let sum = c.norm("T#T+S#S")?.sqrt();
            let je = c.joint(&["T", "S"])?;
            let sum3 = c.norm("T#T+S#S+(TS)#(TS)")?.sqrt();
            let je3 = c.joint(&["T", "S", "TS"])?;
            let lower3 = sum3.scale(1.0 / (2.0 * 3f64.sqrt()));
            Ok(vec![
                Part::le("lower", sum.scale(1.0 / (2.0 * 2f64.sqrt())), je),
                Part::le("upper", je, sum),
                Part::le("lower d=3", lower3, je3).with_tol(tuple_tol(je3)),
                Part::le("upper d=3", je3, sum3).with_tol(tuple_tol(sum3)),
            ])
        },
    ),
    entry(
        "B7",
        Arity::T,
        Kind::Bound,
        Group::Background,
        "(1/16)‖T♯T + TT♯‖_A ≤ ω_A(T)² ≤ ½‖T♯T + TT♯‖_A",
        "numerical radius squared against T♯T + TT♯",
        |c| {
            let sum = c.norm("T#T+TT#")?;
            let w2 = c.omega("T")?.sqr();
            Ok(vec![
                Part::le("lower", sum.scale(1.0 / 16.0), w2),
                Part::le("upper", w2, sum.scale(0.5)),
            ])
        },
    ),
    entry(
        "B8",
        Arity::T,
        Kind::Bound,
        Group::Background,
        "max{ω_A(T), ‖T‖_A²} ≤ dω_A(T) ≤ √(ω_A(T)² + ‖T‖_A⁴)",
        "elementary Davis-Wielandt bounds",
        |c| {
            let (w, n, dw) = (c.omega("T")?, c.norm("T")?, c.dw("T")?);
            Ok(vec![
                Part::le("lower omega", w, dw),
                Part::le("lower norm", n.sqr(), dw),
                Part::le("upper", dw, (w.sqr() + n.powi(4)).sqrt()),
            ])
        },
    ),
    entry(
        "B9",
        Arity::T,
        Kind::Equality,
        Group::Background,
        "dω_A(T) = ω_{A,e}(T, T♯T)",
        "Davis-Wielandt radius as a joint radius",
        |c| Ok(vec![Part::eq("dw=joint", c.dw("T")?, c.joint(&["T", "T#T"])?)]),
    ),
    // ---- main results ----
    entry(
        "M1",
        Arity::TS,
        Kind::Bound,
        Group::Main,
        "ω_{A,e}(T,S)² ≤ √(‖(T♯T)² + (S♯S)²‖_A + 2ω_A²(S♯T)) ≤ √(‖T‖_A⁴ + ‖S‖_A⁴ + 2ω_A²(S♯T)) ≤ ‖T‖_A² + ‖S‖_A²",
        "first joint-radius upper bound, as proved",
        |c| {
            let je = c.joint(&["T", "S"])?;
            let w2 = c.omega("S#T")?.sqr().scale(2.0);
            let (nt, ns) = (c.norm("T")?, c.norm("S")?);
            let t1 = (c.norm("(T#T)^2+(S#S)^2")? + w2).sqrt();
            let t2 = (nt.powi(4) + ns.powi(4) + w2).sqrt();
            let t3 = nt.sqr() + ns.sqr();
            Ok(vec![
                Part::le("term1", je.sqr(), t1),
                Part::le("term2", t1, t2),
                Part::le("term3", t2, t3),
            ])
        },
    ),
    InequalityEntry {
        status: Status::SuspectPrinted,
        counterexample: Some(m1p_counterexample),
        ..entry(
            "M1p",
            Arity::TS,
            Kind::Bound,
            Group::Main,
            "ω_{A,e}(T,S) ≤ √(‖T‖_A⁴ + ‖S‖_A⁴ + 2ω_A²(S♯T)) ≤ ‖T‖_A² + ‖S‖_A²",
            "first joint-radius upper bound, as printed",
            |c| {
                let je = c.joint(&["T", "S"])?;
                let w2 = c.omega("S#T")?.sqr().scale(2.0);
                let (nt, ns) = (c.norm("T")?, c.norm("S")?);
                Ok(vec![
                    Part::le("middle", je, (nt.powi(4) + ns.powi(4) + w2).sqrt()),
                    Part::le("outer", je, nt.sqr() + ns.sqr()),
                ])
            },
        )
    },
    entry(
        "M2",
        Arity::TS,
        Kind::Bound,
        Group::Main,
        "ω_{A,e}(T,S) ≤ [ω_A((T♯T)² + (S♯S)²) + 2ω_A²(S♯T)]^{1/4}",
        "joint radius via the numerical radius of (T♯T)² + (S♯S)²",
        |c| {
            let rhs = (c.omega("(T#T)^2+(S#S)^2")? + c.omega("S#T")?.sqr().scale(2.0)).root4();
            Ok(vec![Part::le("bound", c.joint(&["T", "S"])?, rhs)])
        },
    ),
    entry(
        "M3",
        Arity::T,
        Kind::Bound,
        Group::Main,
        "dω_A(T) ≤ [ω_A((T♯T)² + (T♯T)⁴) + 2ω_A²(T♯T²)]^{1/4}",
        "Davis-Wielandt radius via (T♯T)² + (T♯T)⁴",
        |c| {
            let rhs = (c.omega("(T#T)^2+(T#T)^4")? + c.omega("T#T^2")?.sqr().scale(2.0)).root4();
            Ok(vec![Part::le("bound", c.dw("T")?, rhs)])
        },
    ),
    entry(
        "M4",
        Arity::TS,
        Kind::Bound,
        Group::Main,
        "ω_{A,e}(T,S) ≤ √(½(‖T♯T + S♯S‖_A + ‖T♯T − S♯S‖_A) + ω_A(S♯T))",
        "joint radius via sum and difference of A-adjoint products, as proved",
        |c| {
            let sum = c.norm("T#T+S#S")? + c.norm("T#T-S#S")?;
            let rhs = (sum.scale(0.5) + c.omega("S#T")?).sqrt();
            Ok(vec![Part::le("bound", c.joint(&["T", "S"])?, rhs)])
        },
    ),
    InequalityEntry {
        status: Status::SuspectPrinted,
        counterexample: Some(m4p_counterexample),
        ..entry(
            "M4p",
            Arity::TS,
            Kind::Bound,
            Group::Main,
            "ω_{A,e}(T,S) ≤ (√2/2)√(‖T♯T + S♯S‖_A + ‖T♯T − S♯S‖_A + ω_A(S♯T))",
            "joint radius via sum and difference of A-adjoint products, as printed",
            |c| {
                let sum = c.norm("T#T+S#S")? + c.norm("T#T-S#S")?;
                let rhs = (sum + c.omega("S#T")?).sqrt().scale(HALF_SQRT2);
                Ok(vec![Part::le("bound", c.joint(&["T", "S"])?, rhs)])
            },
        )
    },
    InequalityEntry {
        status: Status::DerivedCorrection,
        ..entry(
            "M4b",
            Arity::TS,
            Kind::Bound,
            Group::Main,
            "ω_{A,e}(T,S) ≤ √(‖T‖_A² + ‖S‖_A² + ω_A(S♯T))",
            "joint radius via the seminorms, chained form",
            |c| {
                let rhs = (c.norm("T")?.sqr() + c.norm("S")?.sqr() + c.omega("S#T")?).sqrt();
                Ok(vec![Part::le("bound", c.joint(&["T", "S"])?, rhs)])
            },
        )
    },
    entry(
        "M5",
        Arity::T,
        Kind::Bound,
        Group::Main,
        "dω_A(T) ≤ √(½[ω_A((T♯T)² + T♯T) + ω_A((T♯T)² − T♯T)] + ω_A(T♯T²))",
        "Davis-Wielandt radius via (T♯T)² ± T♯T",
        |c| {
            let sum = c.omega("(T#T)^2+T#T")? + c.omega("(T#T)^2-T#T")?;
            let rhs = (sum.scale(0.5) + c.omega("T#T^2")?).sqrt();
            Ok(vec![Part::le("bound", c.dw("T")?, rhs)])
        },
    ),
    InequalityEntry {
        sharpness: Some("twil"),
        ..entry(
            "M6",
            Arity::T,
            Kind::Bound,
            Group::Main,
            "ω_A(T) ≤ ½√(‖T♯T + TT♯‖_A + ‖T² + (T♯)²‖_A + ω_A((T♯ + T)(T − T♯)))",
            "numerical radius via T² + (T♯)²",
            |c| {
                let sum = c.norm("T#T+TT#")? + c.norm("T^2+T#^2")? + c.omega("(T#+T)(T-T#)")?;
                Ok(vec![Part::le("bound", c.omega("T")?, sum.sqrt().scale(0.5))])
            },
        )
    },
    InequalityEntry {
        status: Status::SuspectPrinted,
        counterexample: Some(m7p_counterexample),
        ..entry(
            "M7p",
            Arity::T,
            Kind::Bound,
            Group::Main,
            "ω_A(T) ≤ ½√(‖T♯T + TT♯‖_A + ‖T♯T − TT♯‖_A + ½ω_A(T²))",
            "numerical radius via the A-self-commutator, as printed",
            |c| {
                let sum = c.norm("T#T+TT#")? + c.norm("T#T-TT#")? + c.omega("T^2")?.scale(0.5);
                Ok(vec![Part::le("bound", c.omega("T")?, sum.sqrt().scale(0.5))])
            },
        )
    },
    InequalityEntry {
        status: Status::DerivedCorrection,
        sharpness: Some("nor1"),
        ..entry(
            "M7c",
            Arity::T,
            Kind::Bound,
            Group::Main,
            "ω_A(T) ≤ ½√(‖T♯T + TT♯‖_A + ‖T♯T − TT♯‖_A + 2ω_A(T²))",
            "numerical radius via the A-self-commutator, corrected coefficient",
            |c| {
                let sum = c.norm("T#T+TT#")? + c.norm("T#T-TT#")? + c.omega("T^2")?.scale(2.0);
                Ok(vec![Part::le("bound", c.omega("T")?, sum.sqrt().scale(0.5))])
            },
        )
    },
    InequalityEntry {
        sharpness: Some("mai10"),
        ..entry(
            "M8",
            Arity::TS,
            Kind::Bound,
            Group::Main,
            "ω_{A,e}(T,S) ≤ √(max{‖T‖_A², ‖S‖_A²} + ω_A(S♯T))",
            "joint radius via the larger seminorm",
            |c| {
                let m = c.norm("T")?.sqr().max(c.norm("S")?.sqr());
                let rhs = (m + c.omega("S#T")?).sqrt();
                Ok(vec![Part::le("bound", c.joint(&["T", "S"])?, rhs)])
            },
        )
    },
    InequalityEntry {
        sharpness: Some("sharpmai"),
        ..entry(
            "M9",
            Arity::T,
            Kind::Bound,
            Group::Main,
            "ω_A(T) ≤ (√2/2)√(‖T‖_A² + ω_A(T²))",
            "numerical radius via ω_A(T²)",
            |c| {
                let rhs = (c.norm("T")?.sqr() + c.omega("T^2")?).sqrt().scale(HALF_SQRT2);
                Ok(vec![Part::le("bound", c.omega("T")?, rhs)])
            },
        )
    },
    entry(
        "M10",
        Arity::T,
        Kind::Bound,
        Group::Main,
        "ω_A(T) ≤ ½√(max{‖T + T♯‖_A², ‖T − T♯‖_A²} + ω_A((T♯ + T)(T − T♯)))",
        "numerical radius via the A-real and A-imaginary parts",
        |c| {
            let m = c.norm("T+T#")?.sqr().max(c.norm("T-T#")?.sqr());
            let rhs = (m + c.omega("(T#+T)(T-T#)")?).sqrt().scale(0.5);
            Ok(vec![Part::le("bound", c.omega("T")?, rhs)])
        },
    ),
    entry(
        "M11",
        Arity::T,
        Kind::Bound,
        Group::Main,
        "dω_A(T) ≤ √(max{‖T‖_A², ‖T‖_A⁴} + ω_A(T♯T²))",
        "Davis-Wielandt radius via the larger of ‖T‖² and ‖T‖⁴",
        |c| {
            let n = c.norm("T")?;
            let rhs = (n.sqr().max(n.powi(4)) + c.omega("T#T^2")?).sqrt();
            Ok(vec![Part::le("bound", c.dw("T")?, rhs)])
        },
    ),
    entry(
        "M12",
        Arity::TS,
        Kind::Bound,
        Group::Main,
        "ω_{A,e}(T,S) ≤ √(max{ω_A(T), ω_A(S)}·√(‖T♯T + S♯S‖_A + 2ω_A(S♯T)))",
        "joint radius via the larger numerical radius",
        |c| {
            let m = c.omega("T")?.max(c.omega("S")?);
            let inner = (c.norm("T#T+S#S")? + c.omega("S#T")?.scale(2.0)).sqrt();
            Ok(vec![Part::le("bound", c.joint(&["T", "S"])?, (m * inner).sqrt())])
        },
    ),
    entry(
        "M13",
        Arity::T,
        Kind::Bound,
        Group::Main,
        "ω_A(T) ≤ (√2/2)√(‖T‖_A·√(‖T♯T + TT♯‖_A + 2ω_A(T²))) ≤ ‖T‖_A",
        "numerical radius via the seminorm and ω_A(T²)",
        |c| {
            let n = c.norm("T")?;
            let inner = (c.norm("T#T+TT#")? + c.omega("T^2")?.scale(2.0)).sqrt();
            let mid = (n * inner).sqrt().scale(HALF_SQRT2);
            Ok(vec![Part::le("bound", c.omega("T")?, mid), Part::le("chain", mid, n)])
        },
    ),
    entry(
        "M14",
        Arity::T,
        Kind::Bound,
        Group::Main,
        "dω_A(T) ≤ √(max{ω_A(T), ω_A(T♯T)}·√(ω_A((T♯T)² + T♯T) + 2ω_A(T♯T²)))",
        "Davis-Wielandt radius via the larger of ω_A(T) and ω_A(T♯T)",
        |c| {
            let m = c.omega("T")?.max(c.omega("T#T")?);
            let inner = (c.omega("(T#T)^2+T#T")? + c.omega("T#T^2")?.scale(2.0)).sqrt();
            Ok(vec![Part::le("bound", c.dw("T")?, (m * inner).sqrt())])
        },
    ),
    entry(
        "M15",
        Arity::T,
        Kind::Bound,
        Group::Main,
        "dω_A(T) ≤ √(‖T‖_A·max{ω_A(T), ω_A(T♯T)}·√(1 + ‖T‖_A² + 2ω_A(T)))",
        "Davis-Wielandt radius via the seminorm and ω_A(T)",
        |c| {
            let (n, w) = (c.norm("T")?, c.omega("T")?);
            let m = w.max(c.omega("T#T")?);
            let inner = (k(1.0) + n.sqr() + w.scale(2.0)).sqrt();
            Ok(vec![Part::le("bound", c.dw("T")?, (n * m * inner).sqrt())])
        },
    ),
    InequalityEntry {
        sharpness: Some("thnew"),
        ..entry(
            "M16",
            Arity::TS,
            Kind::Bound,
            Group::Main,
            "(√2/2)·max{ω_A(T + S), ω_A(T − S)} ≤ ω_{A,e}(T,S) ≤ (√2/2)·√(ω_A²(T + S) + ω_A²(T − S))",
            "joint radius between the radii of T ± S",
            |c| {
                let (p, m) = (c.omega("T+S")?, c.omega("T-S")?);
                let je = c.joint(&["T", "S"])?;
                Ok(vec![
                    Part::le("lower", p.max(m).scale(HALF_SQRT2), je),
                    Part::le("upper", je, (p.sqr() + m.sqr()).sqrt().scale(HALF_SQRT2)),
                ])
            },
        )
    },
    InequalityEntry {
        requires: Requirement::SelfAdjointTS,
        ..entry(
            "M17",
            Arity::TS,
            Kind::Bound,
            Group::Main,
            "(√2/2)·max{‖T + S‖_A, ‖T − S‖_A} ≤ ω_{A,e}(T,S) ≤ (√2/2)·√(‖T + S‖_A² + ‖T − S‖_A²) for A-selfadjoint T, S",
            "joint radius between the seminorms of T ± S",
            |c| {
                let (p, m) = (c.norm("T+S")?, c.norm("T-S")?);
                let je = c.joint(&["T", "S"])?;
                Ok(vec![
                    Part::le("lower", p.max(m).scale(HALF_SQRT2), je),
                    Part::le("upper", je, (p.sqr() + m.sqr()).sqrt().scale(HALF_SQRT2)),
                ])
            },
        )
    },
    entry(
        "M18",
        Arity::TS,
        Kind::Bound,
        Group::Main,
        "(√2/2)√(ω_A(T² + S²)) ≤ ω_{A,e}(T,S) ≤ √‖T♯T + S♯S‖_A",
        "joint radius via T² + S²",
        |c| {
            let je = c.joint(&["T", "S"])?;
            Ok(vec![
                Part::le("lower", c.omega("T^2+S^2")?.sqrt().scale(HALF_SQRT2), je),
                Part::le("upper", je, c.norm("T#T+S#S")?.sqrt()),
            ])
        },
    ),
    InequalityEntry {
        sharpness: Some("jordan2_and_normal"),
        ..entry(
            "M19",
            Arity::T,
            Kind::Bound,
            Group::Main,
            "½√‖T♯T + TT♯‖_A ≤ ω_A(T) ≤ (√2/2)√‖T♯T + TT♯‖_A",
            "numerical radius against T♯T + TT♯, improved lower constant",
            |c| {
                let s = c.norm("T#T+TT#")?.sqrt();
                let w = c.omega("T")?;
                Ok(vec![
                    Part::le("lower", s.scale(0.5), w),
                    Part::le("upper", w, s.scale(HALF_SQRT2)),
                ])
            },
        )
    },
    entry(
        "M20",
        Arity::T,
        Kind::Bound,
        Group::Main,
        "dω_A(T) ≤ ½√(ω_A((T♯T + T)²) + ω_A((T♯T − T)²) + ω_A(T♯T + 2(T♯T)² + TT♯))",
        "Davis-Wielandt radius via the parallelogram identity",
        |c| {
            let sum = c.omega("(T#T+T)^2")? + c.omega("(T#T-T)^2")? + c.omega("T#T+2(T#T)^2+TT#")?;
            Ok(vec![Part::le("bound", c.dw("T")?, sum.sqrt().scale(0.5))])
        },
    ),
    entry(
        "M21",
        Arity::T,
        Kind::Bound,
        Group::Main,
        "dω_A(T) ≤ √(½ω_A(T♯T + 2(T♯T)² + TT♯) − ½ inf_{‖x‖_A=1}(‖Tx‖_A − ‖T♯x‖_A)²)",
        "Davis-Wielandt radius with the seminorm-gap correction",
        |c| {
            let rhs = (c.omega("T#T+2(T#T)^2+TT#")? - c.inf_gap("T")?).scale(0.5).sqrt();
            Ok(vec![Part::le("bound", c.dw("T")?, rhs)])
        },
    ),
    entry(
        "M22",
        Arity::T,
        Kind::Bound,
        Group::Main,
        "dω_A(T) ≤ √(ω_A²(T♯T − T) + 2‖T‖_A²ω_A(T))",
        "Davis-Wielandt radius via T♯T − T",
        |c| {
            let rhs = (c.omega("T#T-T")?.sqr() + (c.norm("T")?.sqr() * c.omega("T")?).scale(2.0)).sqrt();
            Ok(vec![Part::le("bound", c.dw("T")?, rhs)])
        },
    ),
    entry(
        "M23",
        Arity::T,
        Kind::Bound,
        Group::Main,
        "dω_A(T) ≤ (√2/2)√(ω_A(T²) + ½ω_A(T♯T + TT♯) + 8μ), μ = ω_A²(T)(2ω_A²(T) − c_A²(T) + 2ω_A(T)√(ω_A²(T) − c_A²(T)))",
        "Davis-Wielandt radius via the A-Crawford number",
        |c| {
            let (w, cr) = (c.omega("T")?, c.crawford("T")?);
            let w2 = w.sqr();
            let spread = (w2 - cr.sqr()).nonneg();
            let mu = w2 * (w2.scale(2.0) - cr.sqr() + (w * spread.sqrt()).scale(2.0));
            let rhs = (c.omega("T^2")? + c.omega("T#T+TT#")?.scale(0.5) + mu.scale(8.0))
                .sqrt()
                .scale(HALF_SQRT2);
            Ok(vec![Part::le("bound", c.dw("T")?, rhs)])
        },
    ),
    // ---- pointwise lemmas ----
    entry(
        "L1",
        Arity::Vectors,
        Kind::Pointwise,
        Group::Lemmas,
        "|⟨a|b⟩_A|² + |⟨a|c⟩_A|² ≤ ‖a‖_A²√(⟨b|b⟩_A² + 2|⟨b|c⟩_A|² + ⟨c|c⟩_A²)",
        "two-vector Bessel-type inequality",
        |c| {
            worst_draw(c, "L1", |c, rng, i| {
                let Some([a, b, v]) = triple(c, rng, i)? else {
                    return Ok(None);
                };
                let sp = c.space();
                let lhs = sp.semi_inner(&a, &b)?.norm_sqr() + sp.semi_inner(&a, &v)?.norm_sqr();
                let bb = sp.semi_inner(&b, &b)?.re;
                let cc = sp.semi_inner(&v, &v)?.re;
                let bc = sp.semi_inner(&b, &v)?.norm_sqr();
                let rhs = sp.seminorm(&a)?.powi(2) * (bb * bb + 2.0 * bc + cc * cc).sqrt();
                Ok(Some(Part::le("worst draw", Interval::around(lhs), Interval::around(rhs))))
            })
        },
    ),
    entry(
        "L2",
        Arity::Vectors,
        Kind::Pointwise,
        Group::Lemmas,
        "sup_{|α|²+|β|²≤1} |αz₁ + βz₂|² = |z₁|² + |z₂|²",
        "scalar supremum identity",
        |c| {
            worst_draw(c, "L2", |c, rng, i| {
                let (z1, z2) = if i % 2 == 0 {
                    let z = gauss_vec(rng, 2);
                    (z[0], z[1])
                } else {
                    let Some(x) = a_unit(c, rng)? else {
                        return Ok(None);
                    };
                    let sp = c.space();
                    let rx = partner(c)?.matrix().mat_vec(&x);
                    (
                        sp.semi_inner(&c.t().matrix().mat_vec(&x), &x)?,
                        sp.semi_inner(&rx, &x)?,
                    )
                };
                let exact = z1.norm_sqr() + z2.norm_sqr();
                let grid = scalar_sup_grid(z1, z2, L2_GRID);
                Ok(Some(
                    Part::eq("worst draw", Interval::around(grid), Interval::around(exact))
                        .with_tol(1e-3 * exact.max(1.0)),
                ))
            })
        },
    ),
    entry(
        "L3",
        Arity::Vectors,
        Kind::Pointwise,
        Group::Lemmas,
        "‖αT + βR‖_A² ≤ (|α|² + |β|²)‖T♯T + R♯R‖_A with R = S, or T♯ without S",
        "seminorm of a combination against the sum of A-adjoint products",
        |c| {
            let r = partner(c)?;
            let t = c.t().clone();
            let sum = t.sharp()?.mul(&t)?.add(&r.sharp()?.mul(&r)?)?;
            let bound = radii::op_seminorm_a(&sum)?.interval();
            worst_draw(c, "L3", |_, rng, _| {
                let ab = gauss_vec(rng, 2);
                let combo = t.scale(ab[0]).add(&r.scale(ab[1]))?;
                let lhs = radii::op_seminorm_a(&combo)?.interval().sqr();
                let rhs = bound.scale(ab[0].norm_sqr() + ab[1].norm_sqr());
                Ok(Some(Part::le("worst draw", lhs, rhs)))
            })
        },
    ),
    entry(
        "L4",
        Arity::Vectors,
        Kind::Pointwise,
        Group::Lemmas,
        "|⟨a|b⟩_A|² + |⟨a|c⟩_A|² ≤ ‖a‖_A²(max{‖b‖_A², ‖c‖_A²} + |⟨b|c⟩_A|)",
        "two-vector inequality with the larger seminorm",
        |c| {
            worst_draw(c, "L4", |c, rng, i| {
                let Some([a, b, v]) = triple(c, rng, i)? else {
                    return Ok(None);
                };
                let sp = c.space();
                let lhs = sp.semi_inner(&a, &b)?.norm_sqr() + sp.semi_inner(&a, &v)?.norm_sqr();
                let m = sp.seminorm(&b)?.powi(2).max(sp.seminorm(&v)?.powi(2));
                let rhs = sp.seminorm(&a)?.powi(2) * (m + sp.semi_inner(&b, &v)?.norm());
                Ok(Some(Part::le("worst draw", Interval::around(lhs), Interval::around(rhs))))
            })
        },
    ),
    entry(
        "L5",
        Arity::Vectors,
        Kind::Pointwise,
        Group::Lemmas,
        "|⟨a|b⟩_A|² + |⟨a|c⟩_A|² ≤ ‖a‖_A·max{|⟨a|b⟩_A|, |⟨a|c⟩_A|}·√(‖b‖_A² + ‖c‖_A² + 2|⟨b|c⟩_A|)",
        "two-vector inequality with the larger inner product",
        |c| {
            worst_draw(c, "L5", |c, rng, i| {
                let Some([a, b, v]) = triple(c, rng, i)? else {
                    return Ok(None);
                };
                let sp = c.space();
                let (ab, ac) = (sp.semi_inner(&a, &b)?.norm(), sp.semi_inner(&a, &v)?.norm());
                let lhs = ab * ab + ac * ac;
                let inner = sp.seminorm(&b)?.powi(2) + sp.seminorm(&v)?.powi(2)
                    + 2.0 * sp.semi_inner(&b, &v)?.norm();
                let rhs = sp.seminorm(&a)? * ab.max(ac) * inner.sqrt();
                Ok(Some(Part::le("worst draw", Interval::around(lhs), Interval::around(rhs))))
            })
        },
    ),
    entry(
        "L6",
        Arity::Vectors,
        Kind::Pointwise,
        Group::Lemmas,
        "|⟨x|z⟩_A⟨z|y⟩_A| ≤ ½(|⟨x|y⟩_A| + ‖x‖_A‖y‖_A) for ‖z‖_A = 1",
        "Buzano's inequality in the A-geometry",
        |c| {
            worst_draw(c, "L6", |c, rng, _| {
                let Some(z) = a_unit(c, rng)? else {
                    return Ok(None);
                };
                let sp = c.space();
                let (x, y) = (gauss_vec(rng, sp.dim()), gauss_vec(rng, sp.dim()));
                let lhs = (sp.semi_inner(&x, &z)? * sp.semi_inner(&z, &y)?).norm();
                let rhs = 0.5 * (sp.semi_inner(&x, &y)?.norm() + sp.seminorm(&x)? * sp.seminorm(&y)?);
                Ok(Some(Part::le("worst draw", Interval::around(lhs), Interval::around(rhs))))
            })
        },
    ),
    entry(
        "L7",
        Arity::Vectors,
        Kind::Pointwise,
        Group::Lemmas,
        "|⟨Ta|a⟩_A|² ≤ ½|⟨T²a|a⟩_A| + ¼⟨(T♯T + TT♯)a|a⟩_A for ‖a‖_A = 1",
        "pointwise bound via T² and T♯T + TT♯",
        |c| {
            let t = c.op("T")?.matrix().clone();
            let t2 = c.op("T^2")?.matrix().clone();
            let sum = c.op("T#T+TT#")?.matrix().clone();
            worst_draw(c, "L7", |c, rng, _| {
                let Some(a) = a_unit(c, rng)? else {
                    return Ok(None);
                };
                let sp = c.space();
                let lhs = sp.semi_inner(&t.mat_vec(&a), &a)?.norm_sqr();
                let rhs = 0.5 * sp.semi_inner(&t2.mat_vec(&a), &a)?.norm()
                    + 0.25 * sp.semi_inner(&sum.mat_vec(&a), &a)?.re;
                Ok(Some(Part::le("worst draw", Interval::around(lhs), Interval::around(rhs))))
            })
        },
    ),
    entry(
        "L8",
        Arity::Vectors,
        Kind::Pointwise,
        Group::Lemmas,
        "|⟨Tx|x⟩_A|² ≤ √⟨T♯Tx|x⟩_A·√⟨TT♯x|x⟩_A for ‖x‖_A = 1",
        "pointwise Cauchy-Schwarz bound",
        |c| {
            let t = c.op("T")?.matrix().clone();
            let tst = c.op("T#T")?.matrix().clone();
            let tts = c.op("TT#")?.matrix().clone();
            worst_draw(c, "L8", |c, rng, _| {
                let Some(x) = a_unit(c, rng)? else {
                    return Ok(None);
                };
                let sp = c.space();
                let lhs = sp.semi_inner(&t.mat_vec(&x), &x)?.norm_sqr();
                let p = sp.semi_inner(&tst.mat_vec(&x), &x)?.re.max(0.0);
                let q = sp.semi_inner(&tts.mat_vec(&x), &x)?.re.max(0.0);
                let rhs = p.sqrt() * q.sqrt();
                Ok(Some(Part::le("worst draw", Interval::around(lhs), Interval::around(rhs))))
            })
        },
    ),
    entry(
        "L9",
        Arity::Vectors,
        Kind::Pointwise,
        Group::Lemmas,
        "½‖Tx‖_A ≤ √(ω_A(T)²/2 + (ω_A(T)/2)√(ω_A(T)² − |⟨Tx|x⟩_A|²)) for ‖x‖_A = 1",
        "pointwise seminorm bound via the numerical radius",
        |c| {
            let t = c.op("T")?.matrix().clone();
            let w = c.omega("T")?;
            worst_draw(c, "L9", |c, rng, _| {
                let Some(x) = a_unit(c, rng)? else {
                    return Ok(None);
                };
                let sp = c.space();
                let tx = t.mat_vec(&x);
                let q = Interval::around(sp.semi_inner(&tx, &x)?.norm_sqr());
                let lhs = Interval::around(0.5 * sp.seminorm(&tx)?);
                let rhs = (w.sqr().scale(0.5) + w.scale(0.5) * (w.sqr() - q).sqrt()).sqrt();
                Ok(Some(Part::le("worst draw", lhs, rhs)))
            })
        },
    ),
    // ---- identities ----
    entry(
        "I1",
        Arity::T,
        Kind::Equality,
        Group::Identities,
        "(T♯T)♯ = T♯T",
        "T♯T is its own A-adjoint",
        |c| {
            let x = c.op("T#T")?;
            Ok(vec![algebraic_eq("(T#T)#", x.sharp()?.matrix(), x.matrix())])
        },
    ),
    InequalityEntry {
        requires: Requirement::SelfAdjointT,
        ..entry(
            "I2",
            Arity::T,
            Kind::Equality,
            Group::Identities,
            "(T♯)♯ = T♯ for A-selfadjoint T",
            "the A-adjoint of an A-selfadjoint operator is its own A-adjoint",
            |c| {
                let x = c.op("T#")?;
                Ok(vec![algebraic_eq("(T#)#", x.sharp()?.matrix(), x.matrix())])
            },
        )
    },
    InequalityEntry {
        requires: Requirement::SelfAdjointT,
        ..entry(
            "I3",
            Arity::T,
            Kind::Equality,
            Group::Identities,
            "‖Tⁿ‖_A = ‖T‖_Aⁿ for A-selfadjoint T, n = 2, 3",
            "powers of A-selfadjoint operators",
            |c| {
                let n = c.norm("T")?;
                Ok(vec![
                    Part::eq("n=2", c.norm("T^2")?, n.powi(2)),
                    Part::eq("n=3", c.norm("T^3")?, n.powi(3)),
                ])
            },
        )
    },
    InequalityEntry {
        requires: Requirement::NormalT,
        sharpness: Some("nor1"),
        ..entry(
            "I4",
            Arity::T,
            Kind::Equality,
            Group::Identities,
            "ω_A(T²) = ω_A(T)² = ‖T‖_A² for A-normal T",
            "A-normal operators attain the seminorm",
            |c| {
                let w2 = c.omega("T")?.sqr();
                Ok(vec![
                    Part::eq("omega(T^2)=omega^2", c.omega("T^2")?, w2),
                    Part::eq("omega^2=norm^2", w2, c.norm("T")?.sqr()),
                ])
            },
        )
    },
    entry(
        "I5",
        Arity::T,
        Kind::Equality,
        Group::Identities,
        "ω_A(T) = ω_{A,e}((Re_A T)♯, (Im_A T)♯)",
        "numerical radius as the joint radius of the A-real and A-imaginary parts",
        |c| Ok(vec![Part::eq("omega=joint", c.omega("T")?, c.joint(&["(ReT)#", "(ImT)#"])?)]),
    ),
    entry(
        "I6",
        Arity::T,
        Kind::Equality,
        Group::Identities,
        "(TR)♯ = R♯T♯ with R = S, or T♯ without S",
        "A-adjoint of a product",
        |c| {
            let t = c.op("T")?;
            let r = partner(c)?;
            let lhs = t.mul(&r)?.sharp()?;
            let rhs = r.sharp()?.mul(&t.sharp()?)?;
            Ok(vec![algebraic_eq("(TR)#", lhs.matrix(), rhs.matrix())])
        },
    ),
];

/// Every registered statement, in catalog order.
pub fn registry() -> &'static [InequalityEntry] {
    REGISTRY
}

/// `max |cos φ·z₁ + sin φ·e^{iθ}·z₂|²` over an `n × n` grid in `(φ, θ)`.
///
/// A common phase of `(α, β)` does not change the modulus, so `α` can be
/// taken real and the boundary `|α|² + |β|² = 1` suffices.
pub fn scalar_sup_grid(z1: C64, z2: C64, n: usize) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..n {
        let phi = std::f64::consts::FRAC_PI_2 * i as f64 / (n - 1) as f64;
        let (s, co) = phi.sin_cos();
        for j in 0..n {
            let theta = std::f64::consts::TAU * j as f64 / n as f64;
            let v = z1 * co + z2 * C64::from_polar(s, theta);
            best = best.max(v.norm_sqr());
        }
    }
    best
}
