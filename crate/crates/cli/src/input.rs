use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;

use mixhom_core::builders::{builtin_example, random_mixed, BuiltinParams, Twist, BUILTIN_NAMES};
use mixhom_core::format::complex_from_json;
use mixhom_core::{Field, MixedComplex, Poly, PolySeq};

use crate::args::{FieldArg, SeqArg, SigmaArg, SourceArgs};

/// Dimensions of the `random` builtin when `--dims` is absent.
const RANDOM_DEFAULT_DIMS: &[usize] = &[2, 3, 3, 2];

/// A resolved complex and the sequence that goes with it, if any.
pub struct Input {
    pub complex: Arc<MixedComplex>,
    pub seq: Option<PolySeq>,
    /// The sequence came from `--c` rather than from the file or builtin.
    pub seq_from_flag: bool,
    pub summary: InputSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputSummary {
    pub source: String,
    pub name: String,
    pub field: String,
    #[serde(rename = "N")]
    pub top: usize,
    pub dims: Vec<usize>,
    pub trusted_degree: Option<usize>,
    pub sequence: Option<String>,
}

impl Input {
    pub fn seq(&self) -> Result<&PolySeq> {
        self.seq
            .as_ref()
            .ok_or_else(|| anyhow!("this command needs a polynomial sequence; pass --c"))
    }
}

fn field_of(args: &SourceArgs) -> Result<Field> {
    match (args.field, args.p) {
        (FieldArg::Q, None) => Ok(Field::Rationals),
        (FieldArg::Q, Some(_)) => bail!("--p only applies to --field Fp"),
        (FieldArg::Fp, Some(p)) => Ok(Field::prime(p)?),
        (FieldArg::Fp, None) => bail!("--field Fp needs --p"),
    }
}

/// `"1,-1;2,0,1"` is the sequence `1 - x, 2 + x^2`.
fn parse_polys(field: Field, text: &str) -> Result<Vec<Poly>> {
    text.split(';')
        .map(|p| {
            let coeffs = p
                .split(',')
                .map(|c| field.parse(c.trim()))
                .collect::<mixhom_core::Result<Vec<_>>>()
                .with_context(|| format!("bad polynomial `{p}`"))?;
            Ok(Poly::new(field, coeffs))
        })
        .collect()
}

fn seq_from_flag(args: &SourceArgs, field: Field) -> Result<Option<PolySeq>> {
    if args.polys.is_some() && args.seq != Some(SeqArg::Explicit) {
        bail!("--polys only applies to --c explicit");
    }
    let Some(kind) = args.seq else {
        return Ok(None);
    };
    Ok(Some(match kind {
        SeqArg::Cyclic => PolySeq::cyclic(field),
        SeqArg::One => PolySeq::one(field),
        SeqArg::Geometric => {
            let q = args.q.as_deref().unwrap_or("2");
            PolySeq::geometric(field.parse(q)?)
        }
        SeqArg::Explicit => {
            let text = args
                .polys
                .as_deref()
                .ok_or_else(|| anyhow!("--c explicit needs --polys"))?;
            PolySeq::explicit(field, parse_polys(field, text)?)?
        }
    }))
}

pub fn resolve(args: &SourceArgs) -> Result<Input> {
    let flag_seq;
    let (complex, default_seq, source) = if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let (c, seq) = complex_from_json(&text).with_context(|| format!("cannot load {}", path.display()))?;
        flag_seq = seq_from_flag(args, c.field())?;
        (c, seq, format!("file:{}", path.display()))
    } else {
        let name = args.builtin.as_deref().expect("clap requires a source");
        let field = field_of(args)?;
        flag_seq = seq_from_flag(args, field)?;
        if name == "random" {
            let dims = args.dims.clone().unwrap_or_else(|| RANDOM_DEFAULT_DIMS.to_vec());
            if dims.is_empty() {
                bail!("--dims must list at least one dimension");
            }
            let c = random_mixed(field, &dims, args.seed).with_name(format!("random(seed={})", args.seed));
            (c, None, "builtin:random".to_string())
        } else {
            let params = BuiltinParams {
                field,
                q: args.q.as_deref().map(|q| field.parse(q)).transpose()?,
                top: args.top,
                twist: match args.sigma {
                    SigmaArg::Id => Twist::Identity,
                    SigmaArg::SignFlip => Twist::SignFlip,
                },
            };
            let b = builtin_example(name, &params).with_context(|| {
                format!("known builtins: {}, random", BUILTIN_NAMES.join(", "))
            })?;
            (b.complex, b.recommended, format!("builtin:{name}"))
        }
    };
    let seq_from_flag = flag_seq.is_some();
    let seq = flag_seq.or(default_seq);
    if let Some(s) = &seq {
        if s.field() != complex.field() {
            bail!("the sequence and the complex live over different fields");
        }
        // Only the characteristic clash is a usage error; a vanishing
        // constant term is a failed hypothesis reported by the checks.
        if let Err(e @ mixhom_core::Error::InvalidParameter(_)) = s.check_invertible(complex.top()) {
            return Err(e.into());
        }
    }
    let summary = InputSummary {
        source,
        name: complex.name().to_string(),
        field: complex.field().to_string(),
        top: complex.top(),
        dims: complex.dims().to_vec(),
        trusted_degree: complex.trusted_degree(),
        sequence: seq.as_ref().map(PolySeq::label),
    };
    Ok(Input { complex: Arc::new(complex), seq, seq_from_flag, summary })
}
