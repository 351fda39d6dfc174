//! CSV curve and pair files, JSON reports.
//!
//! CSV files open with `# key=value` metadata lines, then a mandatory header.
//! Columns: `s, p1..pD, e1_1..eD_D, kappa, tau` (+ `sigma` in G4); pair files
//! append `gamma, img_p1..img_pD, img_e1_1..img_eD_D`. Floats are written with
//! 17 significant digits so a write/read cycle is lossless.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, BufRead, Read, Write};

use serde::Serialize;

use crate::backlund::TransformedPair;
use crate::curves::{CurveData, FrenetData};
use crate::error::{Error, Result};
use crate::gamma::BacklundParams;
use crate::grid::Grid;
use crate::spaces::{Frame, GVec, SpaceCase};

pub type Meta = BTreeMap<String, String>;

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn header(space: SpaceCase, pair: bool) -> Vec<String> {
    let d = space.dim();
    let mut cols = vec!["s".to_string()];
    let block = |prefix: &str, cols: &mut Vec<String>| {
        cols.extend((1..=d).map(|k| format!("{prefix}p{k}")));
        for i in 1..=d {
            cols.extend((1..=d).map(|k| format!("{prefix}e{i}_{k}")));
        }
    };
    block("", &mut cols);
    cols.push("kappa".into());
    cols.push("tau".into());
    if space == SpaceCase::G4 {
        cols.push("sigma".into());
    }
    if pair {
        cols.push("gamma".into());
        block("img_", &mut cols);
    }
    cols
}

fn write_preamble(out: &mut impl Write, meta: &Meta) -> Result<()> {
    for (k, v) in meta {
        writeln!(out, "# {k}={v}")?;
    }
    Ok(())
}

fn push_block(row: &mut Vec<String>, p: &GVec, frame: &Frame) {
    row.extend(p.iter().map(fmt_f64));
    for v in frame.vectors() {
        row.extend(v.iter().map(fmt_f64));
    }
}

fn write_rows(out: impl Write, header: &[String], rows: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(&r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn frenet_meta(meta: &mut Meta, frenet: &FrenetData) {
    if let Some(e) = frenet.epsilon {
        meta.insert("epsilon".into(), e.to_string());
    }
    if let Some(m) = frenet.mu {
        meta.insert("mu".into(), m.to_string());
    }
}

/// Writes a seed curve with its frames. `meta` must not contain `case` or `kind`.
pub fn write_curve(mut out: impl Write, curve: &CurveData, frenet: &FrenetData, extra: &Meta) -> Result<()> {
    let space = curve.space();
    check_lengths(curve, frenet)?;
    let mut meta = extra.clone();
    meta.insert("case".into(), space.label().into());
    meta.insert("kind".into(), "curve".into());
    frenet_meta(&mut meta, frenet);
    write_preamble(&mut out, &meta)?;
    let grid = *curve.grid();
    let rows = (0..grid.len()).map(|i| seed_row(curve, frenet, i));
    write_rows(out, &header(space, false), rows)
}

fn check_lengths(curve: &CurveData, frenet: &FrenetData) -> Result<()> {
    let n = curve.grid().len();
    if frenet.len() != n || frenet.kappa.len() != n || frenet.tau.len() != n {
        return Err(Error::GridMismatch(format!("{n} samples but {} frames", frenet.len())));
    }
    Ok(())
}

fn seed_row(curve: &CurveData, frenet: &FrenetData, i: usize) -> Vec<String> {
    let mut row = vec![fmt_f64(curve.grid().s(i))];
    push_block(&mut row, &curve.positions()[i], &frenet.frames[i]);
    row.push(fmt_f64(frenet.kappa[i]));
    row.push(fmt_f64(frenet.tau[i]));
    if curve.space() == SpaceCase::G4 {
        row.push(fmt_f64(frenet.sigma.as_ref().map_or(0.0, |s| s[i])));
    }
    row
}

pub fn write_pair(mut out: impl Write, pair: &TransformedPair) -> Result<()> {
    let p = &pair.params;
    let space = p.space;
    check_lengths(&pair.seed_curve, &pair.seed_frenet)?;
    let mut meta = Meta::new();
    meta.insert("case".into(), space.label().into());
    meta.insert("kind".into(), "pair".into());
    meta.insert("tau0".into(), fmt_f64(p.tau0));
    meta.insert("phi".into(), fmt_f64(p.phi));
    meta.insert("gamma0".into(), fmt_f64(p.gamma0));
    frenet_meta(&mut meta, &pair.seed_frenet);
    write_preamble(&mut out, &meta)?;
    let rows = (0..p.grid.len()).map(|i| {
        let mut row = seed_row(&pair.seed_curve, &pair.seed_frenet, i);
        row.push(fmt_f64(pair.gamma[i]));
        push_block(&mut row, &pair.image_curve.positions()[i], &pair.image_frames[i]);
        row
    });
    write_rows(out, &header(space, true), rows)
}

/// A parsed CSV file before interpretation.
struct Table {
    meta: Meta,
    space: SpaceCase,
    /// File line number of the first data row.
    first_line: usize,
    columns: BTreeMap<String, Vec<f64>>,
    grid: Grid,
}

impl Table {
    fn column(&self, name: &str) -> Result<&[f64]> {
        self.columns.get(name).map(Vec::as_slice).ok_or_else(|| Error::Format {
            row: self.first_line - 1,
            column: name.into(),
            message: "missing column".into(),
        })
    }

    fn len(&self) -> usize {
        self.grid.len()
    }

    fn vectors(&self, prefix: &str, name: impl Fn(usize) -> String) -> Result<Vec<GVec>> {
        let d = self.space.dim();
        let cols = (1..=d).map(|k| self.column(&format!("{prefix}{}", name(k)))).collect::<Result<Vec<_>>>()?;
        Ok((0..self.len()).map(|i| GVec::from_slice(&cols.iter().map(|c| c[i]).collect::<Vec<_>>()).unwrap()).collect())
    }

    fn positions(&self, prefix: &str) -> Result<Vec<GVec>> {
        self.vectors(prefix, |k| format!("p{k}"))
    }

    fn frames(&self, prefix: &str) -> Result<Vec<Frame>> {
        let d = self.space.dim();
        let per_vector = (1..=d).map(|i| self.vectors(prefix, |k| format!("e{i}_{k}"))).collect::<Result<Vec<_>>>()?;
        (0..self.len()).map(|s| Frame::new(per_vector.iter().map(|v| v[s]).collect())).collect()
    }

    fn meta_f64(&self, key: &str) -> Result<Option<f64>> {
        self.meta
            .get(key)
            .map(|v| {
                v.trim().parse::<f64>().map_err(|e| Error::Format {
                    row: 0,
                    column: format!("# {key}"),
                    message: e.to_string(),
                })
            })
            .transpose()
    }

    fn meta_sign(&self, key: &str) -> Result<Option<i32>> {
        Ok(self.meta_f64(key)?.map(|v| if v < 0.0 { -1 } else { 1 }))
    }

    fn frenet(&self) -> Result<FrenetData> {
        Ok(FrenetData {
            frames: self.frames("")?,
            kappa: self.column("kappa")?.to_vec(),
            tau: self.column("tau")?.to_vec(),
            epsilon: self.meta_sign("epsilon")?,
            mu: self.meta_sign("mu")?,
            sigma: if self.space == SpaceCase::G4 { Some(self.column("sigma")?.to_vec()) } else { None },
        })
    }
}

fn read_table(input: impl Read) -> Result<Table> {
    let mut reader = io::BufReader::new(input);
    let mut meta = Meta::new();
    let mut line_no = 0;
    let mut line = String::new();
    // preamble
    let header_line = loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            return Err(Error::Format { row: line_no, column: "header".into(), message: "no header row".into() });
        }
        line_no += 1;
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix('#') {
            let (k, v) = rest.split_once('=').ok_or_else(|| Error::Format {
                row: line_no,
                column: "#".into(),
                message: format!("metadata line '{trimmed}' is not key=value"),
            })?;
            meta.insert(k.trim().to_string(), v.trim().to_string());
        } else if !trimmed.is_empty() {
            break line.clone();
        }
    };
    let header_row = line_no;
    let space: SpaceCase = meta
        .get("case")
        .ok_or_else(|| Error::Format { row: 1, column: "# case".into(), message: "missing case metadata".into() })?
        .parse()?;
    let names: Vec<String> = header_line.trim().split(',').map(|s| s.trim().to_string()).collect();
    if names.first().map(String::as_str) != Some("s") {
        return Err(Error::Format {
            row: header_row,
            column: names.first().cloned().unwrap_or_default(),
            message: "first column must be 's'".into(),
        });
    }
    let mut data: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).comment(Some(b'#')).from_reader(reader);
    for (k, rec) in rdr.records().enumerate() {
        let row = header_row + 1 + k;
        let rec = rec.map_err(|e| Error::Format { row, column: "-".into(), message: e.to_string() })?;
        if rec.len() != names.len() {
            return Err(Error::Format {
                row,
                column: "-".into(),
                message: format!("{} fields, header has {}", rec.len(), names.len()),
            });
        }
        for (j, field) in rec.iter().enumerate() {
            let v: f64 = field.trim().parse().map_err(|_| Error::Format {
                row,
                column: names[j].clone(),
                message: format!("'{field}' is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::Format { row, column: names[j].clone(), message: "non-finite value".into() });
            }
            data[j].push(v);
        }
    }
    let first_line = header_row + 1;
    let grid = Grid::from_samples(&data[0], first_line)?;
    let columns = names.into_iter().zip(data).collect();
    Ok(Table { meta, space, first_line, columns, grid })
}

/// A seed curve read back from CSV, derivatives by finite differences.
#[derive(Clone, Debug)]
pub struct CurveFile {
    pub curve: CurveData,
    pub frenet: FrenetData,
    pub meta: Meta,
}

impl CurveFile {
    pub fn meta_f64(&self, key: &str) -> Result<Option<f64>> {
        self.meta
            .get(key)
            .map(|v| v.parse::<f64>().map_err(|e| Error::Config(format!("metadata {key}: {e}"))))
            .transpose()
    }
}

pub fn read_curve(input: impl Read) -> Result<CurveFile> {
    let t = read_table(input)?;
    let curve = CurveData::new(t.space, t.grid, t.positions("")?)?;
    let frenet = t.frenet()?;
    Ok(CurveFile { curve, frenet, meta: t.meta })
}

/// Reads a pair as stored; nothing is recomputed, so a corrupted file loads
/// and then fails verification.
pub fn read_pair(input: impl Read) -> Result<TransformedPair> {
    let t = read_table(input)?;
    if t.meta.get("kind").map(String::as_str) != Some("pair") {
        return Err(Error::Format {
            row: 1,
            column: "# kind".into(),
            message: "not a pair file (kind=pair expected)".into(),
        });
    }
    let need = |k: &str| -> Result<f64> {
        t.meta_f64(k)?.ok_or_else(|| Error::Format {
            row: 1,
            column: format!("# {k}"),
            message: "missing metadata".into(),
        })
    };
    let params = BacklundParams::new(t.space, need("tau0")?, need("phi")?, need("gamma0")?, t.grid)?;
    let seed_curve = CurveData::new(t.space, t.grid, t.positions("")?)?;
    let image_curve = CurveData::unchecked(t.space, t.grid, t.positions("img_")?)?;
    Ok(TransformedPair {
        seed_curve,
        seed_frenet: t.frenet()?,
        gamma: t.column("gamma")?.to_vec(),
        params,
        image_curve,
        image_frames: t.frames("img_")?,
    })
}

/// serde_json formatter writing floats with 17 significant digits.
struct Precise(serde_json::ser::PrettyFormatter<'static>);

impl serde_json::ser::Formatter for Precise {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_f64(value).as_bytes())
    }
    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Pretty JSON; non-finite floats become `null`.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise(serde_json::ser::PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(|e| Error::Io(e.to_string()))?;
    let mut s = String::from_utf8(buf).expect("serde_json emits UTF-8");
    let _ = writeln!(s);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backlund::transform_curve;
    use crate::curves::{curve_family, FamilyParams};
    use crate::gamma::solve_gamma;

    fn helix_seed(space: SpaceCase, n: usize) -> crate::curves::FamilyCurve {
        let mut p = FamilyParams::new(space, Grid::new(0.0, 1.5, n).unwrap());
        p.tau = 0.8;
        p.phi = 0.9;
        p.gamma0 = 0.4;
        curve_family("backlund-consistent", &p).unwrap()
    }

    #[test]
    fn curve_round_trip_is_lossless() {
        for space in SpaceCase::ALL {
            let fam = helix_seed(space, 100);
            let frenet = fam.frenet.unwrap();
            let mut buf = Vec::new();
            write_curve(&mut buf, &fam.curve, &frenet, &Meta::new()).unwrap();
            let back = read_curve(buf.as_slice()).unwrap();
            assert_eq!(back.curve.grid(), fam.curve.grid(), "{space}");
            assert_eq!(back.curve.positions(), fam.curve.positions());
            assert_eq!(back.frenet, frenet);
        }
    }

    #[test]
    fn pair_round_trip() {
        let fam = helix_seed(SpaceCase::G4, 80);
        let params = BacklundParams::new(SpaceCase::G4, 0.8, 0.9, 0.4, *fam.curve.grid()).unwrap();
        let k = 1.0;
        let gamma = solve_gamma(&params, Some(&move |_| k)).unwrap();
        let pair = transform_curve(&fam.curve, fam.frenet.as_ref().unwrap(), &gamma, &params).unwrap();
        let mut buf = Vec::new();
        write_pair(&mut buf, &pair).unwrap();
        let back = read_pair(buf.as_slice()).unwrap();
        assert_eq!(back.params, pair.params);
        assert_eq!(back.gamma, pair.gamma);
        assert_eq!(back.image_curve.positions(), pair.image_curve.positions());
        assert_eq!(back.image_frames, pair.image_frames);
        assert!(read_curve(buf.as_slice()).is_ok());
    }

    #[test]
    fn non_uniform_grid_names_row() {
        let text = "# case=g3\ns,p1,p2,p3\n0,0,0,0\n0.1,0.1,0,0\n0.25,0.25,0,0\n0.3,0.3,0,0\n";
        match read_table(text.as_bytes()) {
            Err(Error::NonUniformGrid { row, .. }) => assert_eq!(row, 5),
            other => panic!("{:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn bad_cell_names_row_and_column() {
        let text = "# case=g3\ns,p1,p2,p3\n0,0,0,0\n0.1,0.1,x,0\n";
        match read_table(text.as_bytes()) {
            Err(Error::Format { row, column, .. }) => {
                assert_eq!(row, 4);
                assert_eq!(column, "p2");
            }
            other => panic!("{:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn json_floats_have_17_digits() {
        #[derive(Serialize)]
        struct T {
            x: f64,
            y: f64,
        }
        let s = to_json(&T { x: 0.1, y: f64::NAN }).unwrap();
        assert!(s.contains("1.0000000000000001e-1"), "{s}");
        assert!(s.contains("null"));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["x"].as_f64(), Some(0.1));
    }
}
