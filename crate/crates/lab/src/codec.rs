//! JSON encodings of tuples and valuations.
//!
//! A state on domain `D` is an object with one key per atom of `D`; values
//! are written as numbers when the value set is `{0, ..., k-1}` and as
//! strings otherwise. An event is `{"pre": state, "post": state}`; a trace
//! is an array of letters. Valuation files are
//! `{"domain": [atoms], "traces": [trace, ...]}`, or `"rows": [state, ...]`
//! for relations. Output is canonical: keys and traces are sorted.

use std::path::Path;

use serde_json::{json, Map, Value};

use cva_core::models::{ActionTuples, DbTuples, StateTuples};
use cva_core::tuples::{is_stutter_free, Event, State, StutterFree, Trace, TupleSystem, ValueSet};
use cva_core::{OpenSet, Topology, Valuation};

use crate::error::{LabError, Result};

pub struct Cx<'a> {
    pub topology: &'a Topology,
    pub values: &'a ValueSet,
}

impl Cx<'_> {
    pub fn encode_value(&self, v: u8) -> Value {
        let name = &self.values.names()[v as usize];
        match name.parse::<u64>() {
            Ok(n) if n == v as u64 => json!(n),
            _ => json!(name),
        }
    }

    pub fn decode_value(&self, v: &Value) -> std::result::Result<u8, String> {
        let name = match v {
            Value::Number(n) => n.to_string(),
            Value::String(s) => s.clone(),
            other => return Err(format!("expected a value, found {other}")),
        };
        self.values.index_of(&name).ok_or_else(|| format!("`{name}` is not in the value set"))
    }

    pub fn encode_state(&self, s: State, dom: OpenSet) -> Value {
        let names = self.topology.ground().names();
        Value::Object(dom.atoms().map(|i| (names[i].clone(), self.encode_value(s.get(i)))).collect())
    }

    pub fn decode_state(&self, v: &Value, dom: OpenSet) -> std::result::Result<State, String> {
        let obj = v.as_object().ok_or_else(|| format!("expected a state object, found {v}"))?;
        let ground = self.topology.ground();
        let mut s = State::HEART;
        for (key, val) in obj {
            let i = ground.index_of(key).ok_or_else(|| format!("unknown atom `{key}`"))?;
            if !dom.contains(i) {
                return Err(format!("atom `{key}` is outside the domain {}", self.topology.render(dom)));
            }
            s = s.with(i, self.decode_value(val)?);
        }
        if let Some(i) = dom.atoms().find(|&i| !obj.contains_key(&ground.names()[i])) {
            return Err(format!("missing atom `{}`", ground.names()[i]));
        }
        Ok(s)
    }

    fn encode_trace<L>(&self, t: &Trace<L>, mut letter: impl FnMut(&L) -> Value) -> Value {
        Value::Array(t.iter().map(&mut letter).collect())
    }

    fn decode_trace<L>(
        &self,
        v: &Value,
        mut letter: impl FnMut(&Value) -> std::result::Result<L, String>,
    ) -> std::result::Result<Trace<L>, String> {
        let items = v.as_array().ok_or_else(|| format!("expected a trace array, found {v}"))?;
        items
            .iter()
            .enumerate()
            .map(|(j, x)| letter(x).map_err(|e| format!("component {j}: {e}")))
            .collect()
    }
}

/// Tuple systems with a file encoding.
pub trait Codec: TupleSystem {
    /// Key of the tuple array in valuation files.
    const KEY: &'static str = "traces";

    fn encode_tuple(&self, cx: &Cx, t: &Self::Tuple, dom: OpenSet) -> Value;

    fn decode_tuple(&self, cx: &Cx, v: &Value, dom: OpenSet) -> std::result::Result<Self::Tuple, String>;

    /// Why a decoded tuple is not in the universe, beyond its letters.
    fn shape_error(&self, _t: &Self::Tuple) -> Option<String> {
        None
    }
}

impl Codec for StateTuples {
    fn encode_tuple(&self, cx: &Cx, t: &Trace<State>, dom: OpenSet) -> Value {
        cx.encode_trace(t, |s| cx.encode_state(*s, dom))
    }

    fn decode_tuple(&self, cx: &Cx, v: &Value, dom: OpenSet) -> std::result::Result<Trace<State>, String> {
        cx.decode_trace(v, |x| cx.decode_state(x, dom))
    }

    fn shape_error(&self, t: &Trace<State>) -> Option<String> {
        t.is_empty().then(|| "state traces must be nonempty".to_string())
    }
}

impl Codec for StutterFree {
    fn encode_tuple(&self, cx: &Cx, t: &Trace<State>, dom: OpenSet) -> Value {
        cx.encode_trace(t, |s| cx.encode_state(*s, dom))
    }

    fn decode_tuple(&self, cx: &Cx, v: &Value, dom: OpenSet) -> std::result::Result<Trace<State>, String> {
        cx.decode_trace(v, |x| cx.decode_state(x, dom))
    }

    fn shape_error(&self, t: &Trace<State>) -> Option<String> {
        if t.is_empty() {
            return Some("relative traces must be nonempty".into());
        }
        (!is_stutter_free(t)).then(|| {
            let j = t.windows(2).position(|w| w[0] == w[1]).unwrap_or(0);
            format!("components {j} and {} repeat a state", j + 1)
        })
    }
}

impl Codec for ActionTuples {
    fn encode_tuple(&self, cx: &Cx, t: &Trace<Event>, dom: OpenSet) -> Value {
        cx.encode_trace(t, |e| json!({"pre": cx.encode_state(e.pre, dom), "post": cx.encode_state(e.post, dom)}))
    }

    fn decode_tuple(&self, cx: &Cx, v: &Value, dom: OpenSet) -> std::result::Result<Trace<Event>, String> {
        cx.decode_trace(v, |x| {
            let obj = x.as_object().ok_or_else(|| format!("expected an event object, found {x}"))?;
            if let Some(k) = obj.keys().find(|k| *k != "pre" && *k != "post") {
                return Err(format!("unexpected key `{k}` in event"));
            }
            let part = |k: &str| obj.get(k).ok_or_else(|| format!("event is missing `{k}`"));
            Ok(Event::new(cx.decode_state(part("pre")?, dom)?, cx.decode_state(part("post")?, dom)?))
        })
    }
}

impl Codec for DbTuples {
    const KEY: &'static str = "rows";

    fn encode_tuple(&self, cx: &Cx, t: &State, dom: OpenSet) -> Value {
        cx.encode_state(*t, dom)
    }

    fn decode_tuple(&self, cx: &Cx, v: &Value, dom: OpenSet) -> std::result::Result<State, String> {
        cx.decode_state(v, dom)
    }
}

pub fn encode_domain(topology: &Topology, dom: OpenSet) -> Value {
    json!(topology.names(dom))
}

pub fn decode_domain(topology: &Topology, v: &Value) -> std::result::Result<OpenSet, String> {
    let items = v.as_array().ok_or_else(|| format!("expected an array of atoms, found {v}"))?;
    let names = items
        .iter()
        .map(|x| x.as_str().ok_or_else(|| format!("expected an atom name, found {x}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    topology.open_set(names).map_err(|e| e.to_string())
}

pub fn encode_valuation<S: Codec>(ts: &S, values: &ValueSet, v: &Valuation<S::Tuple>) -> Value {
    let cx = Cx { topology: ts.topology(), values };
    let mut obj = Map::new();
    obj.insert("domain".into(), encode_domain(ts.topology(), v.domain()));
    obj.insert(S::KEY.into(), Value::Array(v.iter().map(|t| ts.encode_tuple(&cx, t, v.domain())).collect()));
    Value::Object(obj)
}

/// Decodes and validates a valuation; errors name the offending trace.
pub fn decode_valuation<S: Codec>(
    ts: &S,
    values: &ValueSet,
    v: &Value,
) -> std::result::Result<Valuation<S::Tuple>, String> {
    let obj = v.as_object().ok_or("expected a valuation object")?;
    if let Some(k) = obj.keys().find(|k| *k != "domain" && *k != S::KEY) {
        return Err(format!("unexpected key `{k}` (this model uses `{}`)", S::KEY));
    }
    let dom = decode_domain(ts.topology(), obj.get("domain").ok_or("missing `domain`")?)?;
    let items = obj
        .get(S::KEY)
        .ok_or_else(|| format!("missing `{}`", S::KEY))?
        .as_array()
        .ok_or_else(|| format!("`{}` must be an array", S::KEY))?;
    let cx = Cx { topology: ts.topology(), values };
    let mut tuples = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let t = ts.decode_tuple(&cx, item, dom).map_err(|e| format!("trace {i}: {e}"))?;
        if let Some(e) = ts.shape_error(&t) {
            return Err(format!("trace {i}: {e}"));
        }
        if ts.length(&t) > ts.cap() {
            return Err(format!("trace {i}: length {} exceeds the cap {}", ts.length(&t), ts.cap()));
        }
        tuples.push(t);
    }
    Ok(Valuation::from_tuples(dom, tuples))
}

pub fn parse_valuation<S: Codec>(ts: &S, values: &ValueSet, text: &str, path: &str) -> Result<Valuation<S::Tuple>> {
    let v: Value = serde_json::from_str(text).map_err(|e| LabError::parse(path, &e))?;
    decode_valuation(ts, values, &v).map_err(|e| LabError::invalid(path, e))
}

pub fn load_valuation<S: Codec>(ts: &S, values: &ValueSet, path: &Path) -> Result<Valuation<S::Tuple>> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| LabError::Io { path: name.clone(), source })?;
    parse_valuation(ts, values, &text, &name)
}

/// Canonical text of a valuation file.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
