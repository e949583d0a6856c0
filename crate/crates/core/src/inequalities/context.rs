use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::{TolerancePolicy, C64};
use crate::radii::{self, RadiusEstimate};
use crate::semihilbert::{AOperator, SemiHilbertSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Quantity {
    Norm,
    Omega,
    Crawford,
    Dw,
    InfGap,
    Joint,
}

/// Evaluation context for one instance `(A, T, S)`.
///
/// Derived operators are addressed by name (`"T#T+TT#"`, `"(T#T)^2"`, ...) and
/// built on first use; every radius is computed at most once per name.
pub struct Ctx<'s> {
    t: AOperator<'s>,
    s: Option<AOperator<'s>>,
    seed: u64,
    ops: HashMap<String, AOperator<'s>>,
    radii: HashMap<(Quantity, String), RadiusEstimate>,
}

impl<'s> Ctx<'s> {
    pub fn new(t: AOperator<'s>, s: Option<AOperator<'s>>) -> Result<Self> {
        if !t.is_compatible() || s.as_ref().is_some_and(|s| !s.is_compatible()) {
            return Err(Error::NotCompatible);
        }
        if let Some(s) = &s {
            if !std::ptr::eq(t.space(), s.space()) {
                return Err(Error::SpaceMismatch);
            }
        }
        Ok(Self {
            t,
            s,
            seed: 0,
            ops: HashMap::new(),
            radii: HashMap::new(),
        })
    }

    /// Seed for the random vectors drawn by pointwise entries.
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn t(&self) -> &AOperator<'s> {
        &self.t
    }

    pub fn s(&self) -> Option<&AOperator<'s>> {
        self.s.as_ref()
    }

    pub fn space(&self) -> &'s SemiHilbertSpace {
        self.t.space()
    }

    pub fn tol(&self) -> &TolerancePolicy {
        self.space().tol()
    }

    /// A generator private to `tag`, so entries draw independent vectors.
    pub fn rng(&self, tag: &str) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let h = tag.bytes().fold(0xcbf2_9ce4_8422_2325_u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
        });
        rng.set_stream(h);
        rng
    }

    /// The operator called `name`; see the match arms for the vocabulary.
    pub fn op(&mut self, name: &str) -> Result<AOperator<'s>> {
        if let Some(op) = self.ops.get(name) {
            return Ok(op.clone());
        }
        let two = C64::new(2.0, 0.0);
        let op = match name {
            "T" => self.t.clone(),
            "S" => self
                .s
                .clone()
                .ok_or_else(|| Error::InvalidConfig("entry needs S".into()))?,
            "T#" => self.op("T")?.sharp()?,
            "S#" => self.op("S")?.sharp()?,
            "T^2" => self.op("T")?.pow(2),
            "T^3" => self.op("T")?.pow(3),
            "T^4" => self.op("T")?.pow(4),
            "S^2" => self.op("S")?.pow(2),
            "T#^2" => self.op("T#")?.pow(2),
            "T#T" => self.op("T#")?.mul(&self.op("T")?)?,
            "TT#" => self.op("T")?.mul(&self.op("T#")?)?,
            "S#S" => self.op("S#")?.mul(&self.op("S")?)?,
            "S#T" => self.op("S#")?.mul(&self.op("T")?)?,
            "TS" => self.op("T")?.mul(&self.op("S")?)?,
            "(TS)#(TS)" => self.op("TS")?.sharp()?.mul(&self.op("TS")?)?,
            "T#T^2" => self.op("T#")?.mul(&self.op("T^2")?)?,
            "T+T#" => self.op("T")?.add(&self.op("T#")?)?,
            "T-T#" => self.op("T")?.sub(&self.op("T#")?)?,
            "T+S" => self.op("T")?.add(&self.op("S")?)?,
            "T-S" => self.op("T")?.sub(&self.op("S")?)?,
            "T^2+S^2" => self.op("T^2")?.add(&self.op("S^2")?)?,
            "T^2+T#^2" => self.op("T^2")?.add(&self.op("T#^2")?)?,
            "T#T+TT#" => self.op("T#T")?.add(&self.op("TT#")?)?,
            "T#T-TT#" => self.op("T#T")?.sub(&self.op("TT#")?)?,
            "T#T+S#S" => self.op("T#T")?.add(&self.op("S#S")?)?,
            "T#T-S#S" => self.op("T#T")?.sub(&self.op("S#S")?)?,
            "T#T+S#S+(TS)#(TS)" => self.op("T#T+S#S")?.add(&self.op("(TS)#(TS)")?)?,
            "(T#+T)(T-T#)" => self.op("T+T#")?.mul(&self.op("T-T#")?)?,
            "(T#T)^2" => self.op("T#T")?.pow(2),
            "(T#T)^4" => self.op("T#T")?.pow(4),
            "(S#S)^2" => self.op("S#S")?.pow(2),
            "(T#T)^2+(S#S)^2" => self.op("(T#T)^2")?.add(&self.op("(S#S)^2")?)?,
            "(T#T)^2+(T#T)^4" => self.op("(T#T)^2")?.add(&self.op("(T#T)^4")?)?,
            "(T#T)^2+T#T" => self.op("(T#T)^2")?.add(&self.op("T#T")?)?,
            "(T#T)^2-T#T" => self.op("(T#T)^2")?.sub(&self.op("T#T")?)?,
            "T#T+T" => self.op("T#T")?.add(&self.op("T")?)?,
            "T#T-T" => self.op("T#T")?.sub(&self.op("T")?)?,
            "(T#T+T)^2" => self.op("T#T+T")?.pow(2),
            "(T#T-T)^2" => self.op("T#T-T")?.pow(2),
            "T#T+2(T#T)^2+TT#" => self.op("T#T+TT#")?.add(&self.op("(T#T)^2")?.scale(two))?,
            "(ReT)#" => self.op("T")?.re_im()?.0.sharp()?,
            "(ImT)#" => self.op("T")?.re_im()?.1.sharp()?,
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown operator expression `{other}`"
                )))
            }
        };
        self.ops.insert(name.to_string(), op.clone());
        Ok(op)
    }

    fn cached(
        &mut self,
        q: Quantity,
        key: String,
        f: impl FnOnce(&mut Self) -> Result<RadiusEstimate>,
    ) -> Result<Interval> {
        if let Some(r) = self.radii.get(&(q, key.clone())) {
            return Ok(r.interval());
        }
        let r = f(self)?;
        self.radii.insert((q, key), r);
        Ok(r.interval())
    }

    /// `‖X‖_A`.
    pub fn norm(&mut self, name: &str) -> Result<Interval> {
        self.cached(Quantity::Norm, name.into(), |c| {
            radii::op_seminorm_a(&c.op(name)?)
        })
    }

    /// `ω_A(X)`.
    pub fn omega(&mut self, name: &str) -> Result<Interval> {
        self.cached(Quantity::Omega, name.into(), |c| {
            radii::omega_a(&c.op(name)?)
        })
    }

    /// `c_A(X)`.
    pub fn crawford(&mut self, name: &str) -> Result<Interval> {
        self.cached(Quantity::Crawford, name.into(), |c| {
            radii::crawford_a(&c.op(name)?)
        })
    }

    /// `dω_A(X)`.
    pub fn dw(&mut self, name: &str) -> Result<Interval> {
        self.cached(Quantity::Dw, name.into(), |c| {
            radii::dw_radius_a(&c.op(name)?)
        })
    }

    /// `inf_{‖x‖_A=1} (‖Xx‖_A − ‖X♯x‖_A)²`.
    pub fn inf_gap(&mut self, name: &str) -> Result<Interval> {
        self.cached(Quantity::InfGap, name.into(), |c| {
            radii::inf_gap_a(&c.op(name)?)
        })
    }

    /// Joint A-numerical radius of one to three named operators.
    pub fn joint(&mut self, names: &[&str]) -> Result<Interval> {
        self.cached(Quantity::Joint, names.join("|"), |c| {
            let ops = names.iter().map(|n| c.op(n)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&AOperator<'_>> = ops.iter().collect();
            radii::joint_radius_tuple(&refs)
        })
    }
}
