use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::{Document, RunConfig, Summary, SCHEMA_VERSION};
use qortho_core::orthogonality::{Status, VerificationReport};

/// A double with 17 significant digits, which round-trips exactly.
/// Non-finite values are spelled `inf`, `-inf` and `nan`.
pub fn format_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Pretty JSON whose floats carry 17 significant digits. serde_json writes
/// non-finite floats as `null` before reaching the formatter.
struct Sig17<'a>(PrettyFormatter<'a>);

impl Formatter for Sig17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        w.write_all(format_f64(v).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    schema_version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at: Option<u64>,
    config: &'a RunConfig,
    records: &'a [VerificationReport],
    summary: Summary,
    data: &'a serde_json::Value,
}

pub fn to_json(doc: &Document) -> Result<String, String> {
    let body = JsonDocument {
        schema_version: SCHEMA_VERSION,
        generated_at: doc.generated_at,
        config: &doc.config,
        records: &doc.records,
        summary: doc.summary(),
        data: &doc.data,
    };
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17(PrettyFormatter::new()));
    body.serialize(&mut ser).map_err(|e| e.to_string())?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| e.to_string())
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Passed => "passed",
        Status::Failed => "failed",
        Status::Inconclusive => "inconclusive",
    }
}

/// Records as `identity_id,i,j,lhs,rhs,residual,terms_used,tail_estimate,status`,
/// or the table rows for the `table` command.
pub fn to_csv(doc: &Document) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| e.to_string();
    if let Some(rows) = &doc.table {
        w.write_record(["family", "n", "m_or_x", "value", "method"])
            .map_err(err)?;
        for r in rows {
            let arg = r.m_or_x.map(format_f64).unwrap_or_default();
            w.write_record([
                r.family.as_str(),
                &r.n.to_string(),
                &arg,
                &format_f64(r.value),
                r.method.as_str(),
            ])
            .map_err(err)?;
        }
    } else {
        w.write_record([
            "identity_id",
            "i",
            "j",
            "lhs",
            "rhs",
            "residual",
            "terms_used",
            "tail_estimate",
            "status",
        ])
        .map_err(err)?;
        for r in &doc.records {
            w.write_record([
                r.identity_id.as_str(),
                &r.indices.0.to_string(),
                &r.indices.1.to_string(),
                &format_f64(r.lhs),
                &format_f64(r.rhs),
                &format_f64(r.residual),
                &r.terms_used.to_string(),
                &format_f64(r.tail_estimate),
                status_name(r.status),
            ])
            .map_err(err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}
