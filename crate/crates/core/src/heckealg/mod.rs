//! G_p matrices, generator words, fixed points and λ_p-binary quadratic forms.

mod bqf;
mod mat2;

pub use bqf::{form_from_matrix, hecke_conjugate, Branch, Bqf};
pub use mat2::{a_sequence, generators, u_power, Gen, Mat2, Point, TraceClass, Word};

use crate::numberfield::serial::nf_to_json;

/// `{"a":…, "b":…, "c":…, "d":…, "word": "UUTUT"}`; the word is omitted when unknown.
pub fn mat_to_json(m: &Mat2) -> serde_json::Value {
    let mut v = serde_json::json!({
        "a": nf_to_json(&m.a),
        "b": nf_to_json(&m.b),
        "c": nf_to_json(&m.c),
        "d": nf_to_json(&m.d),
    });
    if let Some(w) = m.word() {
        v["word"] = serde_json::Value::String(w.to_string());
    }
    v
}
