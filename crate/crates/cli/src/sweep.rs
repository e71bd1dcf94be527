use rotunc_core::specio::{SpecDocument, StateSpec};
use rotunc_core::{Complex64, RelationId};

#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Alpha,
    PendulumN,
    ChiN,
    ChiN1,
    /// `c_a = cos t`, `c_b = sin t`, each keeping its phase.
    Mix(i64, i64),
    Magnitude(i64),
    Phase(i64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub name: String,
    pub target: Target,
    pub values: Vec<f64>,
}

fn int(s: &str, what: &str) -> Result<i64, String> {
    s.parse::<i64>().map_err(|_| format!("{what}: '{s}' is not an integer"))
}

fn real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("'{s}' is not a finite number")),
    }
}

/// `name=start:stop:steps` or `name=v1,v2,...`.
pub fn parse_sweep(text: &str) -> Result<Sweep, String> {
    let (name, range) = text
        .split_once('=')
        .ok_or_else(|| format!("sweep '{text}' must look like name=start:stop:steps or name=v1,v2"))?;
    let parts: Vec<&str> = name.split(':').collect();
    let target = match parts.as_slice() {
        ["alpha"] => Target::Alpha,
        ["n"] => Target::PendulumN,
        ["N"] => Target::ChiN,
        ["N1"] => Target::ChiN1,
        ["mix", a, b] => {
            let (a, b) = (int(a, "mix index")?, int(b, "mix index")?);
            if a == b {
                return Err("mix needs two distinct indices".into());
            }
            Target::Mix(a, b)
        }
        ["mag", m] => Target::Magnitude(int(m, "mag index")?),
        ["phase", m] => Target::Phase(int(m, "phase index")?),
        _ => {
            return Err(format!(
                "unknown sweep parameter '{name}' (alpha, n, N, N1, mix:a:b, mag:m, phase:m)"
            ))
        }
    };
    let values = if range.contains(':') {
        let r: Vec<&str> = range.split(':').collect();
        let [start, stop, steps] = r.as_slice() else {
            return Err(format!("range '{range}' must be start:stop:steps"));
        };
        let (start, stop) = (real(start)?, real(stop)?);
        let steps = int(steps, "steps")?;
        if steps < 1 {
            return Err("steps must be >= 1".into());
        }
        if steps == 1 {
            vec![start]
        } else {
            (0..steps).map(|i| start + (stop - start) * i as f64 / (steps - 1) as f64).collect()
        }
    } else {
        range.split(',').map(real).collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() {
        return Err("sweep has no values".into());
    }
    if matches!(target, Target::PendulumN | Target::ChiN | Target::ChiN1) {
        if let Some(v) = values.iter().find(|v| v.fract() != 0.0) {
            return Err(format!("{name} takes integer values, got {v}"));
        }
    }
    Ok(Sweep { name: name.to_string(), target, values })
}

fn coefficient_slot(spec: &mut StateSpec, m: i64) -> Option<&mut Complex64> {
    match spec {
        StateSpec::Rotor { c, .. } => Some(c.entry(m).or_insert(Complex64::new(0.0, 0.0))),
        StateSpec::Spherical { l, c, .. } => {
            if m.abs() > *l {
                return None;
            }
            c.get_mut((m + *l) as usize)
        }
        _ => None,
    }
}

fn with_modulus(c: Complex64, r: f64) -> Complex64 {
    let phase = if c.norm() == 0.0 { 0.0 } else { c.arg() };
    Complex64::from_polar(r, phase)
}

/// The document at one sweep point; coefficient sweeps rescale the states.
pub fn apply(doc: &SpecDocument, target: &Target, v: f64, force_normalize: bool) -> Result<SpecDocument, String> {
    let mut out = doc.clone();
    let mut touched = false;
    let mut renormalize = force_normalize;
    match target {
        Target::Alpha | Target::ChiN | Target::ChiN1 => {
            let relation = if *target == Target::Alpha { RelationId::R8 } else { RelationId::R12 };
            for sel in out.selections.iter_mut().filter(|s| s.relation == relation) {
                match target {
                    Target::Alpha => sel.params.alpha = Some(v),
                    Target::ChiN => sel.params.n = Some(v as i64),
                    _ => sel.params.n1 = Some(v as i64),
                }
                sel.params.validate(relation).map_err(|e| format!("at {v}: {e}"))?;
                touched = true;
            }
        }
        Target::PendulumN => {
            if v < 0.0 {
                return Err(format!("n must be >= 0, got {v}"));
            }
            for named in &mut out.states {
                if let StateSpec::Pendulum { n, .. } = &mut named.spec {
                    *n = v as i64;
                    touched = true;
                }
            }
        }
        Target::Mix(a, b) => {
            renormalize = true;
            for named in &mut out.states {
                let spec = &mut named.spec;
                if coefficient_slot(spec, *a).is_none() || coefficient_slot(spec, *b).is_none() {
                    continue;
                }
                let ca = coefficient_slot(spec, *a).unwrap();
                *ca = with_modulus(*ca, v.cos());
                let cb = coefficient_slot(spec, *b).unwrap();
                *cb = with_modulus(*cb, v.sin());
                touched = true;
            }
        }
        Target::Magnitude(m) | Target::Phase(m) => {
            renormalize = true;
            for named in &mut out.states {
                if let Some(c) = coefficient_slot(&mut named.spec, *m) {
                    *c = match target {
                        Target::Magnitude(_) => with_modulus(*c, v),
                        _ => Complex64::from_polar(c.norm(), v),
                    };
                    touched = true;
                }
            }
        }
    }
    if !touched {
        return Err("the sweep parameter matches no state or relation in the document".into());
    }
    for named in &mut out.states {
        named.state = named
            .spec
            .build(&out.settings, renormalize)
            .map_err(|e| format!("state '{}' at {v}: {e}", named.name))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        let s = parse_sweep("alpha=0:1:3").unwrap();
        assert_eq!(s.values, vec![0.0, 0.5, 1.0]);
        let s = parse_sweep("alpha=0,1,10").unwrap();
        assert_eq!(s.values, vec![0.0, 1.0, 10.0]);
        assert_eq!(parse_sweep("mix:0:1=0:1:2").unwrap().target, Target::Mix(0, 1));
        assert!(parse_sweep("beta=0:1:2").is_err());
        assert!(parse_sweep("n=0.5,1").is_err());
        assert!(parse_sweep("alpha").is_err());
    }

    #[test]
    fn mix_keeps_phases() {
        let doc = rotunc_core::parse("state spherical l=1 c=[(0,0),(1,0),(0,1)] normalize=true\nrelations R36").unwrap();
        let t = 0.3f64;
        let out = apply(&doc, &Target::Mix(0, 1), t, false).unwrap();
        let rotunc_core::State::Spherical(s) = &out.states[0].state else { panic!() };
        assert!((s.coefficient(0).unwrap() - Complex64::new(t.cos(), 0.0)).norm() < 1e-15);
        assert!((s.coefficient(1).unwrap() - Complex64::new(0.0, t.sin())).norm() < 1e-15);
    }
}
