//! Resolves the point source of a command into a concrete configuration.

use std::fs;
use std::io::Read;

use fatpoints_core::algebra::{Field, ProjectivePoint};
use fatpoints_core::configs::{generate, ConfigSpec, Configuration, PointSet};
use fatpoints_core::geometry::Line;
use fatpoints_core::{Error, Result};

use crate::args::Source;

/// Points plus whatever the source carried along.
#[derive(Debug)]
pub struct Input {
    pub field: Field,
    pub points: Vec<ProjectivePoint>,
    /// Multiplicities stored in a point-set file.
    pub mults: Option<Vec<u32>>,
    /// Construction data of a generated configuration.
    pub config: Option<Configuration>,
}

impl Input {
    pub fn lines(&self) -> &[Line] {
        self.config.as_ref().map_or(&[], |c| &c.lines)
    }
}

fn read_text(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))
}

/// Generator parameters of a family source; --config fields win over defaults,
/// explicit flags win over --config.
pub fn config_spec(src: &Source, d: Option<u32>, seed: u64) -> Result<ConfigSpec> {
    let mut spec = match &src.config {
        Some(path) => {
            let text = read_text(&path.to_string_lossy())?;
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
        }
        None => ConfigSpec::default(),
    };
    if src.family.is_some() {
        spec.family = src.family;
    }
    spec.r = src.r.or(spec.r);
    spec.p = src.p.or(spec.p);
    spec.d = src.family_d.or(d).or(spec.d);
    spec.d2 = src.d2.or(spec.d2);
    spec.height = src.height.or(spec.height);
    spec.max_retries = src.max_retries.or(spec.max_retries);
    spec.seed = Some(spec.seed.unwrap_or(seed));
    match src.field {
        Some(Field::Prime(p)) => spec.prime = Some(p),
        Some(Field::Rational) | None => {}
    }
    Ok(spec)
}

/// `d` is the family degree parameter; commands where --d means something
/// else pass `None`.
pub fn resolve(src: &Source, d: Option<u32>, seed: u64) -> Result<Input> {
    if let Some(arg) = &src.points {
        let set = PointSet::from_json(&read_text(arg)?)?;
        let points = set.to_points()?;
        if let Some(f) = src.field.filter(|&f| f != set.field) {
            return Err(Error::FieldMismatch { left: set.field, right: f });
        }
        return Ok(Input {
            field: set.field,
            points,
            mults: set.mults,
            config: None,
        });
    }
    let spec = config_spec(src, d, seed)?;
    let config = generate(&spec)?.ok_or_else(|| {
        Error::InvalidParameter(format!(
            "generator {} found no configuration within its retry budget",
            spec.family.map_or("?", |f| f.name())
        ))
    })?;
    if let Some(f) = src.field.filter(|&f| f != config.field) {
        return Err(Error::InvalidParameter(format!(
            "family {} is not defined over {f}",
            config.family
        )));
    }
    Ok(Input {
        field: config.field,
        points: config.points.clone(),
        mults: None,
        config: Some(config),
    })
}

/// Explicit flag, else the file's multiplicities, else all ones. A single
/// value is broadcast.
pub fn multiplicities(flag: &[u32], input: &Input) -> Result<Vec<u32>> {
    let n = input.points.len();
    let m = match (flag, &input.mults) {
        ([], Some(m)) => m.clone(),
        ([], None) => vec![1; n],
        ([one], _) => vec![*one; n],
        (many, _) => many.to_vec(),
    };
    if m.len() != n {
        return Err(Error::LengthMismatch { points: n, mults: m.len() });
    }
    Ok(m)
}
