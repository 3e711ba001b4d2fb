//! JSON renderings of core values. Rationals are `"p/q"` strings; maps use
//! sorted keys so output is byte-stable.

use coxdef_core::algebra::{AlgebraElement, Fold, Strategy};
use coxdef_core::coxeter::{CoxeterMatrix, Order, Word};
use coxdef_core::cyclotomic::CyclotomicValue;
use coxdef_core::flatness::{FlatnessReport, ObstructionRelation, Witness};
use coxdef_core::laurent::{rational_to_string, LaurentPoly, ParamIndex};
use coxdef_core::ring::TwistedPair;
use coxdef_core::BigRational;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

pub fn rational(q: &BigRational) -> Value {
    Value::String(rational_to_string(q))
}

pub fn order(m: Order) -> Value {
    match m {
        Order::Finite(k) => json!(k),
        Order::Infinite => json!("inf"),
    }
}

pub fn matrix(m: &CoxeterMatrix) -> Value {
    let orders: Vec<Value> = m.pairs().map(|(i, j, o)| json!([i, j, order(o)])).collect();
    json!({ "rank": m.rank(), "orders": orders })
}

pub fn word(w: &[u8]) -> Value {
    json!(w)
}

pub fn param(p: &ParamIndex) -> String {
    p.to_string()
}

pub fn laurent(p: &LaurentPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(mono, c)| {
            let exps: Vec<Value> = mono
                .exponents()
                .iter()
                .map(|(q, e)| json!([q.i, q.j, q.m, q.k, e.to_string()]))
                .collect();
            json!({ "coeff": rational(c), "exps": exps })
        })
        .collect();
    json!({ "terms": terms })
}

pub fn cyclotomic(v: &CyclotomicValue) -> Value {
    let coeffs: Vec<Value> = v.coeffs.iter().map(rational).collect();
    json!({ "zeta": v.conductor, "coeffs": coeffs })
}

pub fn twisted(p: &TwistedPair) -> Value {
    json!({ "value": rational(&p.value), "twisted": rational(&p.twisted) })
}

pub fn element<E: Clone>(x: &AlgebraElement<E>, coeff: impl Fn(&E) -> Value) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .map(|(w, c)| json!({ "word": word(w), "coeff": coeff(c) }))
        .collect();
    json!({ "even": x.is_even(), "terms": terms })
}

pub fn strategy(s: Strategy) -> Value {
    let fold = match s.fold {
        Fold::LeftToRight => "left-to-right",
        Fold::RightToLeft => "right-to-left",
    };
    json!({ "fold": fold, "reverse_tiebreak": s.reverse_tiebreak })
}

pub fn functional<C>(f: &BTreeMap<ParamIndex, C>, coeff: impl Fn(&C) -> Value) -> Value {
    let map: Map<String, Value> = f.iter().map(|(p, c)| (param(p), coeff(c))).collect();
    Value::Object(map)
}

pub fn obstruction(rel: &ObstructionRelation) -> Value {
    let factors: Vec<Value> = rel
        .factors
        .iter()
        .map(|f| json!({ "i": f.i, "j": f.j, "m": f.m, "exponent": f.exponent, "sign": f.sign }))
        .collect();
    json!({
        "triple": rel.triple,
        "d": rel.d,
        "factors": factors,
        "first_order": functional(&rel.first_order(), |c| json!(c.to_string())),
    })
}

pub fn flatness(r: &FlatnessReport) -> Value {
    let obstructions: Vec<Value> = r.obstructions.iter().map(obstruction).collect();
    json!({
        "flat": r.flat,
        "offending_triples": r.offending_triples,
        "obstructions": obstructions,
    })
}

pub fn witness(w: &Witness) -> Value {
    match w {
        Witness::Strategy {
            word: wd,
            reference,
            other,
            reference_value,
            other_value,
        } => json!({
            "kind": "strategy",
            "word": word(wd),
            "reference": strategy(*reference),
            "other": strategy(*other),
            "reference_value": element(reference_value, twisted),
            "other_value": element(other_value, twisted),
        }),
        Witness::Associativity { triple, left, right } => json!({
            "kind": "associativity",
            "triple": triple.iter().map(|w: &Word| word(w)).collect::<Vec<_>>(),
            "left": element(left, twisted),
            "right": element(right, twisted),
        }),
    }
}
