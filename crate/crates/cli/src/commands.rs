use std::fmt::Write as _;
use std::path::Path;

use modcat_core::classification::{
    check_prime_transitive_catalog, classify_transitive, profile_summary, verify_transitivity_theorems,
    Catalog,
};
use modcat_core::galois::{galois_group, transitive_structure_checks};
use modcat_core::modular_data::{
    build_pointed, build_sl2, build_sl2_adjoint, build_svec, deligne_product, is_prime, prime_factorization,
    validate_modular, QuadraticForm,
};
use modcat_core::sl2z::{is_irreducible, is_minimal, lift_projective};
use modcat_core::supermod::{build_sl2_super, summarize, svec_product, verify_super_theorems, SuperModularData};
use modcat_core::{Error, ModularData, Report};
use serde::de::DeserializeOwned;
use serde_json::json;

use crate::args::{Command, Construct, TheoremArgs};
use crate::output::{approx_block, approx_matrix, csv_checks, pretty_checks, pretty_data, Rendered};

pub enum Failure {
    /// Bad arguments or unreadable input (exit 2).
    Usage(String),
    /// A computation rejected its input (exit 1).
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome = Result<Rendered, Failure>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("cannot parse {}: {e}", path.display())))
}

fn read_data(path: &Path) -> Result<ModularData, Failure> {
    Ok(read_json::<ModularData>(path)?.normalized()?)
}

fn read_super(path: &Path) -> Result<SuperModularData, Failure> {
    let c: SuperModularData = read_json(path)?;
    let underlying = c.underlying.normalized()?;
    Ok(SuperModularData::with_basic_subset(underlying, c.fusion, c.basic_subset)?)
}

fn data_output(c: &ModularData, approx: bool) -> Rendered {
    let mut v = serde_json::to_value(c).expect("data serializes");
    if approx {
        v["approx"] = approx_block(c);
    }
    Rendered::new(v, pretty_data(c))
}

fn super_output(c: &SuperModularData, approx: bool) -> Rendered {
    let mut v = serde_json::to_value(c).expect("data serializes");
    if approx {
        v["approx"] = json!({ "reduced_S": approx_matrix(&c.reduced_s), "underlying": approx_block(&c.underlying) });
    }
    let pretty = format!(
        "super-modular, fermion {}, epsilon {}\nbasic subset {:?}\n{}",
        c.underlying.labels[c.fermion],
        c.epsilon,
        c.pi_labels(),
        pretty_data(&c.underlying)
    );
    Rendered::new(v, pretty)
}

fn report_output(rep: &Report) -> Rendered {
    Rendered::new(serde_json::to_value(rep).expect("reports serialize"), pretty_checks(&rep.subject, &rep.checks))
        .with_csv(csv_checks(&rep.checks))
        .with_ok(rep.passed())
}

fn construct(kind: &Construct, approx: bool) -> Outcome {
    Ok(match kind {
        Construct::Sl2 { k, l } => data_output(&build_sl2(*k, *l)?, approx),
        Construct::Sl2Adjoint { k, l } => data_output(&build_sl2_adjoint(*k, *l)?, approx),
        Construct::Pointed { orders, modulus, coeffs } => {
            if orders.len() != coeffs.len() {
                return Err(Failure::Usage("--orders and --coeffs need the same length".into()));
            }
            data_output(&build_pointed(&QuadraticForm::diagonal(orders, *modulus, coeffs))?, approx)
        }
        Construct::Svec { eps } => {
            if *eps != 1 && *eps != -1 {
                return Err(Failure::Usage("--eps must be 1 or -1".into()));
            }
            data_output(&build_svec(*eps), approx)
        }
        Construct::Product { a, b } => data_output(&deligne_product(&read_data(a)?, &read_data(b)?), approx),
        Construct::Sproduct { a, b } => super_output(&svec_product(&read_super(a)?, &read_super(b)?)?, approx),
        Construct::SuperSl2 { k, l } => super_output(&build_sl2_super(*k, *l)?, approx),
    })
}

fn galois(c: &ModularData) -> Outcome {
    let g = galois_group(c)?;
    let label = |xs: &[usize]| xs.iter().map(|&x| c.labels[x].clone()).collect::<Vec<_>>();
    let orbits: Vec<Vec<String>> = g.orbits.iter().map(|o| label(o)).collect();
    let v = json!({
        "ambient_modulus": g.ambient_modulus,
        "group_order": g.group_order,
        "transitive": g.transitive,
        "regular": g.regular,
        "orbits": orbits,
        "h2_order": g.h2_group.len(),
        "elements": g.representatives().into_iter().map(|(p, a)| json!({"residue": a, "permutation": p})).collect::<Vec<_>>(),
    });
    Ok(Rendered::new(v, format!("{}\norbits {orbits:?}\n", profile_summary(&g))))
}

fn rep(c: &ModularData) -> Outcome {
    let lifts = lift_projective(c)?;
    let mut rows = Vec::new();
    let mut pretty = String::new();
    let mut csv = String::from("index,level,minimal,irreducible\n");
    for (i, r) in lifts.iter().enumerate() {
        let minimal = is_minimal(r);
        let irreducible = is_irreducible(r);
        let _ = writeln!(
            pretty,
            "lift {i:>2}: level {:<6} minimal {:<5} irreducible {irreducible}",
            r.level,
            minimal.is_some()
        );
        let _ = writeln!(csv, "{i},{},{},{irreducible}", r.level, minimal.is_some());
        rows.push(json!({
            "index": i,
            "level": r.level,
            "minimal": minimal.is_some(),
            "minimal_type": minimal,
            "irreducible": irreducible,
            "t_exponents": r.t_exponents,
            "conductor": r.conductor,
        }));
    }
    Ok(Rendered::new(json!({ "lifts": rows }), pretty).with_csv(csv))
}

fn factor(c: &ModularData) -> Outcome {
    let factors = prime_factorization(c)?;
    let named: Vec<Vec<String>> = factors
        .iter()
        .map(|d| d.iter().map(|&x| c.labels[x].clone()).collect())
        .collect();
    let prime = is_prime(c)?;
    let v = json!({ "prime": prime, "factors": factors, "factor_labels": named });
    let mut pretty = format!("prime {prime}\n");
    for f in &named {
        let _ = writeln!(pretty, "  factor {f:?}");
    }
    Ok(Rendered::new(v, pretty))
}

pub fn catalog_csv(cat: &Catalog) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["N", "primes", "ls", "rank", "anomaly"]).expect("in-memory write");
    for e in &cat.entries {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        w.write_record([e.n.to_string(), join(&e.primes), join(&e.ls), e.rank.to_string(), e.anomaly.clone()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 records")
}

fn classify(max_ordt: u64, max_prime: u64) -> Outcome {
    let cat = classify_transitive(max_ordt, max_prime)?;
    let mut pretty = String::new();
    for (n, k) in cat.counts() {
        let _ = writeln!(pretty, "N = {n:<5} {k} categories");
    }
    let _ = writeln!(pretty, "total {}", cat.entries.len());
    let csv = catalog_csv(&cat);
    Ok(Rendered::new(serde_json::to_value(&cat).expect("catalog serializes"), pretty).with_csv(csv))
}

fn super_summary(c: &SuperModularData) -> Outcome {
    let s = summarize(c)?;
    let pretty = format!(
        "epsilon {}\nbasic subset {:?}\ntransitive {}\ns-simple {}\nsplit {:?}\n",
        s.epsilon, s.pi_labels, s.transitive, s.s_simple, s.split
    );
    Ok(Rendered::new(serde_json::to_value(&s).expect("summary serializes"), pretty))
}

fn theorems(t: &TheoremArgs) -> Outcome {
    let rep = if let Some(path) = &t.input {
        let c = read_data(path)?;
        let mut rep = verify_transitivity_theorems(&c)?;
        if rep.passed() {
            rep.absorb("structure", transitive_structure_checks(&c)?);
        }
        rep
    } else if let Some(p) = t.prime {
        check_prime_transitive_catalog(p)?
    } else if let Some(k) = t.super_kmax {
        verify_super_theorems(k)?
    } else {
        return Err(Failure::Usage("one of --in, --prime, --super-kmax is required".into()));
    };
    Ok(report_output(&rep))
}

pub fn run(command: &Command, approx: bool) -> Outcome {
    match command {
        Command::Construct { kind } => construct(kind, approx),
        Command::Validate(i) => {
            let c = read_data(&i.input)?;
            let v = validate_modular(&c);
            Ok(Rendered::new(serde_json::to_value(&v).expect("reports serialize"), pretty_checks("validation", &v.checks))
                .with_csv(csv_checks(&v.checks))
                .with_ok(v.passed()))
        }
        Command::Galois(i) => galois(&read_data(&i.input)?),
        Command::Rep(i) => rep(&read_data(&i.input)?),
        Command::Factor(i) => factor(&read_data(&i.input)?),
        Command::Classify { max_ordt, max_prime } => classify(*max_ordt, *max_prime),
        Command::Super(i) => super_summary(&read_super(&i.input)?),
        Command::Theorems(t) => theorems(t),
    }
}
