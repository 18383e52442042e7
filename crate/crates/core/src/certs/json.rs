use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{Map, Value};

use super::model::*;
use crate::error::{Error, Result};
use crate::lrs::{format_rational, parse_rational};

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn s<T: ToString>(x: &T) -> Value {
    Value::String(x.to_string())
}

fn rat(x: &BigRational) -> Value {
    Value::String(format_rational(x))
}

fn arr<T>(v: &[T], f: impl Fn(&T) -> Value) -> Value {
    Value::Array(v.iter().map(f).collect())
}

fn obj(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

/// Canonical JSON: sorted keys, every number written as a decimal string.
pub fn to_json(c: &Certificate) -> Value {
    obj(vec![
        (
            "input",
            obj(vec![
                ("coefficients", arr(&c.input.coefficients, rat)),
                ("initial", arr(&c.input.initial, rat)),
            ]),
        ),
        (
            "working",
            obj(vec![
                ("coefficients", arr(&c.working.coefficients, s)),
                ("initial", arr(&c.working.initial, s)),
                ("ell", s(&c.working.ell)),
                ("scale", s(&c.working.scale)),
            ]),
        ),
        ("zeros", arr(&c.zeros, s)),
        ("entries", arr(&c.entries, entry_json)),
    ])
}

fn entry_json(e: &ProgressionEntry) -> Value {
    let witness = match &e.witness {
        Witness::Modulus(w) => obj(vec![
            ("type", Value::String("modulus".into())),
            ("m", s(&w.m)),
            ("period", s(&w.period)),
        ]),
        Witness::Valuation(v) => obj(vec![
            ("type", Value::String("valuation".into())),
            ("center", s(&v.center)),
            ("stride", s(&v.stride)),
            ("p", s(&v.p)),
            ("L", s(&v.l)),
            ("e", s(&v.e)),
            ("nu", s(&v.nu)),
            ("j0", s(&v.j0)),
            ("K", s(&v.terms_used)),
            ("zero_proofs", arr(&v.zero_proofs, proof_json)),
        ]),
    };
    obj(vec![("modulus", s(&e.modulus)), ("residue", s(&e.residue)), ("witness", witness)])
}

fn proof_json(z: &ZeroProofData) -> Value {
    let poly = |p: &Vec<BigRational>| arr(p, rat);
    obj(vec![
        ("j", s(&z.j)),
        ("modulus", poly(&z.modulus)),
        ("roots", arr(&z.roots, poly)),
        ("alphas", arr(&z.alphas, poly)),
        ("independent", arr(&z.independent, s)),
        (
            "relations",
            arr(&z.relations, |r| {
                obj(vec![
                    ("index", s(&r.index)),
                    ("m", s(&r.m)),
                    ("n", arr(&r.n, s)),
                    ("torsion", s(&r.torsion)),
                ])
            }),
        ),
    ])
}

pub fn serialize(c: &Certificate) -> String {
    let mut out = serde_json::to_string_pretty(&to_json(c)).expect("serializable");
    out.push('\n');
    out
}

pub fn parse_certificate(src: &str) -> Result<Certificate> {
    let v: Value = serde_json::from_str(src).map_err(|e| schema(format!("invalid JSON: {e}")))?;
    from_json(&v)
}

fn field<'a>(v: &'a Value, key: &str, ctx: &str) -> Result<&'a Value> {
    v.as_object()
        .ok_or_else(|| schema(format!("{ctx}: expected an object")))?
        .get(key)
        .ok_or_else(|| schema(format!("{ctx}: missing key `{key}`")))
}

fn get_str<'a>(v: &'a Value, ctx: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| schema(format!("{ctx}: expected a string")))
}

fn get_int(v: &Value, ctx: &str) -> Result<BigInt> {
    get_str(v, ctx)?.parse().map_err(|_| schema(format!("{ctx}: expected an integer string")))
}

fn get_u64(v: &Value, ctx: &str) -> Result<u64> {
    get_str(v, ctx)?.parse().map_err(|_| schema(format!("{ctx}: expected a nonnegative integer string")))
}

fn get_rat(v: &Value, ctx: &str) -> Result<BigRational> {
    parse_rational(get_str(v, ctx)?).ok_or_else(|| schema(format!("{ctx}: expected a rational string")))
}

fn get_arr<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(format!("{ctx}: expected an array")))
}

fn list<T>(v: &Value, ctx: &str, f: impl Fn(&Value, &str) -> Result<T>) -> Result<Vec<T>> {
    get_arr(v, ctx)?.iter().map(|x| f(x, ctx)).collect()
}

fn usize_of(v: &Value, ctx: &str) -> Result<usize> {
    usize::try_from(get_u64(v, ctx)?).map_err(|_| schema(format!("{ctx}: value too large")))
}

pub fn from_json(v: &Value) -> Result<Certificate> {
    let input = field(v, "input", "certificate")?;
    let working = field(v, "working", "certificate")?;
    let input = InputEcho {
        coefficients: list(field(input, "coefficients", "input")?, "input.coefficients", get_rat)?,
        initial: list(field(input, "initial", "input")?, "input.initial", get_rat)?,
    };
    let working = WorkingSpec {
        coefficients: list(field(working, "coefficients", "working")?, "working.coefficients", get_int)?,
        initial: list(field(working, "initial", "working")?, "working.initial", get_int)?,
        ell: get_int(field(working, "ell", "working")?, "working.ell")?,
        scale: get_int(field(working, "scale", "working")?, "working.scale")?,
    };
    let zeros = list(field(v, "zeros", "certificate")?, "zeros", get_int)?;
    let entries = get_arr(field(v, "entries", "certificate")?, "entries")?
        .iter()
        .map(entry_from_json)
        .collect::<Result<_>>()?;
    Ok(Certificate { input, working, zeros, entries })
}

fn entry_from_json(v: &Value) -> Result<ProgressionEntry> {
    let ctx = "entry";
    let w = field(v, "witness", ctx)?;
    let witness = match get_str(field(w, "type", "witness")?, "witness.type")? {
        "modulus" => Witness::Modulus(ModulusWitness {
            m: get_u64(field(w, "m", "witness")?, "witness.m")?,
            period: get_u64(field(w, "period", "witness")?, "witness.period")?,
        }),
        "valuation" => Witness::Valuation(ValuationWitness {
            center: get_int(field(w, "center", "witness")?, "witness.center")?,
            stride: get_int(field(w, "stride", "witness")?, "witness.stride")?,
            p: get_u64(field(w, "p", "witness")?, "witness.p")?,
            l: get_u64(field(w, "L", "witness")?, "witness.L")?,
            e: u32::try_from(get_u64(field(w, "e", "witness")?, "witness.e")?)
                .map_err(|_| schema("witness.e: value too large"))?,
            nu: get_u64(field(w, "nu", "witness")?, "witness.nu")?,
            j0: usize_of(field(w, "j0", "witness")?, "witness.j0")?,
            terms_used: get_u64(field(w, "K", "witness")?, "witness.K")?,
            zero_proofs: get_arr(field(w, "zero_proofs", "witness")?, "witness.zero_proofs")?
                .iter()
                .map(proof_from_json)
                .collect::<Result<_>>()?,
        }),
        other => return Err(schema(format!("unknown witness type `{other}`"))),
    };
    Ok(ProgressionEntry {
        modulus: get_int(field(v, "modulus", ctx)?, "entry.modulus")?,
        residue: get_int(field(v, "residue", ctx)?, "entry.residue")?,
        witness,
    })
}

fn proof_from_json(v: &Value) -> Result<ZeroProofData> {
    let ctx = "zero_proof";
    let poly = |x: &Value, c: &str| list(x, c, get_rat);
    Ok(ZeroProofData {
        j: usize_of(field(v, "j", ctx)?, "zero_proof.j")?,
        modulus: poly(field(v, "modulus", ctx)?, "zero_proof.modulus")?,
        roots: list(field(v, "roots", ctx)?, "zero_proof.roots", poly)?,
        alphas: list(field(v, "alphas", ctx)?, "zero_proof.alphas", poly)?,
        independent: list(field(v, "independent", ctx)?, "zero_proof.independent", usize_of)?,
        relations: get_arr(field(v, "relations", ctx)?, "zero_proof.relations")?
            .iter()
            .map(|r| {
                Ok(RelationData {
                    index: usize_of(field(r, "index", "relation")?, "relation.index")?,
                    m: get_int(field(r, "m", "relation")?, "relation.m")?,
                    n: list(field(r, "n", "relation")?, "relation.n", get_int)?,
                    torsion: get_u64(field(r, "torsion", "relation")?, "relation.torsion")?,
                })
            })
            .collect::<Result<_>>()?,
    })
}
