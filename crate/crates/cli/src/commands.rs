use std::fmt;
use std::io::{self, Write};

use num_bigint::BigUint;
use serde::de::DeserializeOwned;
use serde_json::Value;

use fubini_park::bijections::{
    exceedances, gamma, gamma_inverse, lambda, lambda_inverse, phi, psi, ExceedancePointer,
};
use fubini_park::blocks::block_structure;
use fubini_park::counting::{
    egf_closed_form, egf_coefficients, fr_t2_count, fr_t3_count, fubini, parking_function_count,
    t1_count, t2_count, with_empty_convention,
};
use fubini_park::fubini::{fr_to_osp, osp_to_fr, position_vector};
use fubini_park::oracle::{brute_force_count, brute_force_family, verify_suite, Caps, Fault, TupleFamily, VerifyOptions};
use fubini_park::parking::lucky_cars;
use fubini_park::restricted::{generate_family, generate_osps, Family};
use fubini_park::{FubiniRanking, OrderedSetPartition, PreferenceList, Restriction, RestrictionSet};

use crate::args::{
    Bijection, CapArgs, Cli, Command, CountArgs, CountMethod, EnumerateArgs, FamilyArg, FamilyArgs, FaultArg,
    ListFormat, MapArgs, ReportFormat, SequenceArgs, SequenceFormat, SequenceVia, VerifyArgs,
};
use crate::record::{Meta, Object, OutputRecord};

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unparsable input; exit 2.
    Usage(String),
    /// Input outside the domain of the requested map; exit 2.
    Domain(String),
    /// Two methods disagree or a verification check failed; exit 1.
    Mismatch(String),
    /// A configured cap was exceeded; exit 3.
    Cap(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Mismatch(_) | Self::Io(_) => 1,
            Self::Usage(_) | Self::Domain(_) => 2,
            Self::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) | Self::Domain(m) | Self::Mismatch(m) | Self::Cap(m) => f.write_str(m),
            Self::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<fubini_park::Error> for CliError {
    fn from(e: fubini_park::Error) -> Self {
        match e {
            fubini_park::Error::CapExceeded { .. } => Self::Cap(e.to_string()),
            fubini_park::Error::Parse { .. } | fubini_park::Error::Unsupported(_) => Self::Usage(e.to_string()),
            _ => Self::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}

type CliResult<T = ()> = Result<T, CliError>;

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Enumerate(a) => enumerate(&a, out, err),
        Command::Count(a) => count(&a, out),
        Command::Map(a) => map(&a, out),
        Command::Sequence(a) => sequence(&a, out),
        Command::Verify(a) => verify(&a, out),
    }
}

fn caps(c: &CapArgs) -> Caps {
    Caps {
        tuple_n: c.tuple_cap,
        osp_n: c.osp_cap,
    }
}

fn restriction(f: &FamilyArgs) -> CliResult<Option<Restriction>> {
    let r = match (f.restriction_type, &f.set, &f.seq) {
        (None, None, None) => None,
        (Some(1), Some(s), None) => Some(Restriction::T1(s.clone())),
        (Some(2), Some(s), None) => Some(Restriction::T2(s.clone())),
        (Some(3), None, Some(q)) => Some(Restriction::T3(q.clone())),
        (None, _, _) => return Err(CliError::Usage("--set and --seq need --type".into())),
        (Some(3), _, _) => return Err(CliError::Usage("--type 3 takes --seq and no --set".into())),
        (Some(t), _, _) => return Err(CliError::Usage(format!("--type {t} takes --set and no --seq"))),
    };
    if f.family == FamilyArg::Pf && r.is_some() {
        return Err(CliError::Usage(
            "restrictions apply to upf, fr and osp, not to pf".into(),
        ));
    }
    Ok(r)
}

enum Members {
    Tuples(Vec<PreferenceList>),
    Partitions(Vec<OrderedSetPartition>),
}

impl Members {
    fn len(&self) -> usize {
        match self {
            Self::Tuples(v) => v.len(),
            Self::Partitions(v) => v.len(),
        }
    }
}

fn members(n: usize, family: FamilyArg, r: Option<Restriction>, caps: &Caps) -> CliResult<Members> {
    Ok(match family {
        FamilyArg::Pf => Members::Tuples(brute_force_family(n, TupleFamily::Pf, None, caps)?),
        FamilyArg::Upf | FamilyArg::Fr => {
            caps.check_osp("enumerate", n)?;
            let fam = if family == FamilyArg::Upf { Family::Upf } else { Family::Fr };
            let mut v: Vec<_> = generate_family(n, fam, r).collect();
            v.sort();
            Members::Tuples(v)
        }
        FamilyArg::Osp => {
            caps.check_osp("enumerate", n)?;
            let mut v: Vec<_> = generate_osps(n, r).collect();
            v.sort();
            Members::Partitions(v)
        }
    })
}

fn csv_tuple(t: &[usize]) -> String {
    t.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn csv_osp(p: &OrderedSetPartition) -> String {
    p.blocks()
        .iter()
        .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(",")
}

fn enumerate(a: &EnumerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let r = restriction(&a.family)?;
    let found = members(a.n, a.family.family, r, &caps(&a.caps))?;
    match (&found, a.format) {
        (Members::Tuples(v), ListFormat::Json) => {
            serde_json::to_writer(&mut *out, v).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        (Members::Partitions(v), ListFormat::Json) => {
            serde_json::to_writer(&mut *out, v).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        (Members::Tuples(v), ListFormat::Lines) => {
            for t in v {
                writeln!(out, "{}", serde_json::to_string(t).map_err(io::Error::from)?)?;
            }
        }
        (Members::Partitions(v), ListFormat::Lines) => {
            for p in v {
                writeln!(out, "{}", serde_json::to_string(p).map_err(io::Error::from)?)?;
            }
        }
        (Members::Tuples(v), ListFormat::Csv) => {
            for t in v {
                writeln!(out, "{}", csv_tuple(t.entries()))?;
            }
        }
        (Members::Partitions(v), ListFormat::Csv) => {
            for p in v {
                writeln!(out, "{}", csv_osp(p))?;
            }
        }
    }
    writeln!(err, "count: {}", found.len())?;
    Ok(())
}

fn formula_count(n: usize, family: FamilyArg, r: Option<&Restriction>) -> CliResult<BigUint> {
    if family == FamilyArg::Pf {
        return Ok(parking_function_count(n));
    }
    Ok(match r {
        None => fubini(n),
        Some(Restriction::T1(s)) => t1_count(n, s),
        Some(Restriction::T2(s)) if s.is_explicit() => fr_t2_count(n, s)?,
        Some(Restriction::T2(s)) => t2_count(n, s),
        Some(Restriction::T3(q)) => fr_t3_count(n, q),
    })
}

fn enumerated_count(n: usize, family: FamilyArg, r: Option<Restriction>, caps: &Caps) -> CliResult<BigUint> {
    if family == FamilyArg::Pf {
        return Ok(brute_force_count(n, TupleFamily::Pf, None, caps)?.into());
    }
    caps.check_osp("count", n)?;
    // every restricted family is in bijection with its admitted partitions
    Ok(generate_osps(n, r).count().into())
}

fn count(a: &CountArgs, out: &mut dyn Write) -> CliResult {
    let r = restriction(&a.family)?;
    let fam = a.family.family;
    let caps = caps(&a.caps);
    match a.method {
        CountMethod::Formula => writeln!(out, "{}", formula_count(a.n, fam, r.as_ref())?)?,
        CountMethod::Enumerate => writeln!(out, "{}", enumerated_count(a.n, fam, r, &caps)?)?,
        CountMethod::Both => {
            let f = formula_count(a.n, fam, r.as_ref())?;
            let e = enumerated_count(a.n, fam, r, &caps)?;
            writeln!(out, "{f}, {e}")?;
            if f != e {
                return Err(CliError::Mismatch(format!("formula gives {f}, enumeration gives {e}")));
            }
        }
    }
    Ok(())
}

fn decode<T: DeserializeOwned>(value: Value, what: &str) -> CliResult<T> {
    serde_json::from_value(value).map_err(|e| {
        let msg = e.to_string();
        if msg.contains(what) {
            CliError::Domain(msg)
        } else {
            CliError::Domain(format!("input is not {what}: {msg}"))
        }
    })
}

fn upf_meta(upf: &PreferenceList) -> CliResult<Meta> {
    let bs = block_structure(upf)?;
    Ok(Meta {
        block_sizes: Some(bs.sizes()),
        block_minima: Some(bs.blocks().iter().map(|b| b.min_value).collect()),
        lucky: Some(lucky_cars(upf)?),
        ..Meta::default()
    })
}

fn fr_meta(fr: &FubiniRanking) -> Meta {
    Meta {
        position_vector: Some(position_vector(fr).into_parts()),
        ..Meta::default()
    }
}

fn osp_meta(p: &OrderedSetPartition) -> Meta {
    Meta {
        num_blocks: Some(p.num_blocks()),
        ..Meta::default()
    }
}

fn map(a: &MapArgs, out: &mut dyn Write) -> CliResult {
    let mut value: Value =
        serde_json::from_str(&a.input).map_err(|e| CliError::Usage(format!("--input is not JSON: {e}")))?;
    // a record from an earlier `map` can be fed back in
    if let Value::Object(obj) = &mut value {
        if obj.contains_key("kind") {
            if let Some(payload) = obj.remove("payload") {
                value = payload;
            }
        }
    }
    let record = apply(a.bijection, value).map_err(|e| match e {
        CliError::Domain(m) => {
            let name = clap::ValueEnum::to_possible_value(&a.bijection).expect("no skipped variants");
            CliError::Domain(format!("{}: {m}", name.get_name()))
        }
        other => other,
    })?;
    writeln!(out, "{}", serde_json::to_string(&record).map_err(io::Error::from)?)?;
    Ok(())
}

fn apply(bijection: Bijection, value: Value) -> CliResult<OutputRecord> {
    const TUPLE: &str = "a Fubini ranking";
    const OSP: &str = "an ordered set partition";
    Ok(match bijection {
        Bijection::Phi => {
            let fr: FubiniRanking = decode(value, TUPLE)?;
            let upf = phi(&fr);
            let meta = upf_meta(&upf)?;
            OutputRecord::with_meta(Object::Upf(upf), meta)
        }
        Bijection::Psi => {
            let upf: PreferenceList = decode(value, "a tuple")?;
            let fr = psi(&upf)?;
            let meta = fr_meta(&fr);
            OutputRecord::with_meta(Object::Fr(fr), meta)
        }
        Bijection::Lambda => {
            let image = lambda(&decode(value, OSP)?)?;
            let meta = osp_meta(&image);
            OutputRecord::with_meta(Object::Osp(image), meta)
        }
        Bijection::LambdaInv => {
            let image = lambda_inverse(&decode(value, OSP)?)?;
            let meta = osp_meta(&image);
            OutputRecord::with_meta(Object::Osp(image), meta)
        }
        Bijection::Gamma => {
            let ptr = gamma(&decode(value, OSP)?)?;
            let meta = Meta {
                exceedances: Some(exceedances(ptr.perm())),
                ..Meta::default()
            };
            OutputRecord::with_meta(Object::ExceedancePointer(ptr), meta)
        }
        Bijection::GammaInv => {
            let ptr: ExceedancePointer = decode(value, "an exceedance pointer {\"perm\", \"index\"}")?;
            let image = gamma_inverse(&ptr);
            let meta = osp_meta(&image);
            OutputRecord::with_meta(Object::Osp(image), meta)
        }
        Bijection::OspToFr => {
            let fr = osp_to_fr(&decode(value, OSP)?);
            let meta = fr_meta(&fr);
            OutputRecord::with_meta(Object::Fr(fr), meta)
        }
        Bijection::FrToOsp => {
            let image = fr_to_osp(&decode(value, TUPLE)?);
            let meta = osp_meta(&image);
            OutputRecord::with_meta(Object::Osp(image), meta)
        }
    })
}

/// The type 1 set a generating-function method works from; the unrestricted
/// families count as type 1 over all positive integers.
fn egf_set(a: &SequenceArgs, r: Option<&Restriction>) -> CliResult<RestrictionSet> {
    if a.family.family == FamilyArg::Pf {
        return Err(CliError::Usage("generating-function methods do not cover pf".into()));
    }
    match r {
        None => Ok(RestrictionSet::All),
        Some(Restriction::T1(s)) => Ok(s.clone()),
        Some(_) => Err(CliError::Usage("generating-function methods need --type 1".into())),
    }
}

fn sequence(a: &SequenceArgs, out: &mut dyn Write) -> CliResult {
    let r = restriction(&a.family)?;
    let fam = a.family.family;
    let values: Vec<BigUint> = match a.via {
        SequenceVia::Formula => (0..=a.n_max)
            .map(|n| formula_count(n, fam, r.as_ref()))
            .collect::<CliResult<_>>()?,
        SequenceVia::Enumerate => {
            let caps = caps(&a.caps);
            (0..=a.n_max)
                .map(|n| enumerated_count(n, fam, r.clone(), &caps))
                .collect::<CliResult<_>>()?
        }
        // series coefficients at n = 0 are set to the empty-object count
        SequenceVia::Egf => with_empty_convention(egf_coefficients(&egf_set(a, r.as_ref())?, a.n_max)),
        SequenceVia::ClosedEgf => with_empty_convention(egf_closed_form(&egf_set(a, r.as_ref())?, a.n_max)?),
    };
    if a.format == SequenceFormat::Csv {
        writeln!(out, "n,value")?;
    }
    for (n, v) in values.iter().enumerate() {
        match a.format {
            SequenceFormat::Bfile => writeln!(out, "{n} {v}")?,
            SequenceFormat::Csv => writeln!(out, "{n},{v}")?,
        }
    }
    Ok(())
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    let opts = VerifyOptions {
        n_max: a.n_max,
        caps: caps(&a.caps),
        fault: a.inject_fault.map(|f| match f {
            FaultArg::FubiniOffByOne => Fault::FubiniOffByOne,
        }),
    };
    let report = verify_suite(&opts)?;
    match a.format {
        ReportFormat::Text => writeln!(out, "{report}")?,
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    if report.all_passed() {
        Ok(())
    } else {
        let failed: Vec<_> = report.failures().map(|c| c.name).collect();
        Err(CliError::Mismatch(format!("failed checks: {}", failed.join(", "))))
    }
}
