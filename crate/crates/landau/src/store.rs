//! Table caching and export formats.
//!
//! Binary caches share a little-endian header: magic "LDAU", one version
//! byte, one kind byte (1 = prime table, 2 = landau table). The prime
//! payload is `limit, count` followed by the gaps between consecutive
//! primes as LEB128 varints; the landau payload is `n_max, prime_budget`
//! followed by the raw log g and P⁺ arrays.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::champions::{RatioChampions, RealChampions};
use crate::error::{Error, Result};
use crate::gseq::GSequence;
use crate::primes::PrimeTable;
use crate::table::LandauTable;

const MAGIC: &[u8; 4] = b"LDAU";
const VERSION: u8 = 1;
const KIND_PRIMES: u8 = 1;
const KIND_LANDAU: u8 = 2;

fn write_varint(w: &mut impl Write, mut v: u64) -> Result<()> {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            w.write_all(&[byte])?;
            return Ok(());
        }
        w.write_all(&[byte | 0x80])?;
    }
}

fn read_varint(r: &mut impl Read) -> Result<u64> {
    let mut v = 0u64;
    let mut shift = 0u32;
    loop {
        let mut b = [0u8; 1];
        r.read_exact(&mut b)?;
        v |= u64::from(b[0] & 0x7f) << shift;
        if b[0] & 0x80 == 0 {
            return Ok(v);
        }
        shift += 7;
        if shift >= 64 {
            return Err(Error::Cache("varint overflow".into()));
        }
    }
}

fn write_header(w: &mut impl Write, kind: u8) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&[VERSION, kind])?;
    Ok(())
}

fn read_header(r: &mut impl Read, kind: u8) -> Result<()> {
    let mut head = [0u8; 6];
    r.read_exact(&mut head)?;
    if &head[..4] != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    if head[4] != VERSION {
        return Err(Error::Cache(format!("unsupported version {}", head[4])));
    }
    if head[5] != kind {
        return Err(Error::Cache(format!("wrong cache kind {}", head[5])));
    }
    Ok(())
}

pub fn save_primes(path: &Path, table: &PrimeTable) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_header(&mut w, KIND_PRIMES)?;
    w.write_all(&table.limit().to_le_bytes())?;
    w.write_all(&(table.prime_count() as u64).to_le_bytes())?;
    let mut prev = 0u64;
    for &p in table.primes() {
        write_varint(&mut w, p - prev)?;
        prev = p;
    }
    w.flush()?;
    Ok(())
}

pub fn load_primes(path: &Path) -> Result<PrimeTable> {
    let mut r = BufReader::new(File::open(path)?);
    read_header(&mut r, KIND_PRIMES)?;
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    let limit = u64::from_le_bytes(buf);
    r.read_exact(&mut buf)?;
    let count = u64::from_le_bytes(buf) as usize;
    let mut primes = Vec::with_capacity(count);
    let mut prev = 0u64;
    for _ in 0..count {
        prev += read_varint(&mut r)?;
        primes.push(prev);
    }
    Ok(PrimeTable::from_primes(limit, primes))
}

pub fn save_landau(path: &Path, table: &LandauTable) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_header(&mut w, KIND_LANDAU)?;
    w.write_all(&(table.n_max() as u64).to_le_bytes())?;
    w.write_all(&table.prime_budget().to_le_bytes())?;
    for &v in table.log_g_all() {
        w.write_all(&v.to_le_bytes())?;
    }
    for &q in table.p_plus_all() {
        w.write_all(&q.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn load_landau(path: &Path) -> Result<LandauTable> {
    let mut r = BufReader::new(File::open(path)?);
    read_header(&mut r, KIND_LANDAU)?;
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    let n_max = u64::from_le_bytes(buf) as usize;
    r.read_exact(&mut buf)?;
    let prime_budget = u64::from_le_bytes(buf);
    let mut log_g = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        r.read_exact(&mut buf)?;
        log_g.push(f64::from_le_bytes(buf));
    }
    let mut p_plus = Vec::with_capacity(n_max + 1);
    let mut buf4 = [0u8; 4];
    for _ in 0..=n_max {
        r.read_exact(&mut buf4)?;
        p_plus.push(u32::from_le_bytes(buf4));
    }
    Ok(LandauTable::from_arrays(n_max, prime_budget, log_g, p_plus))
}

/// Truncate toward −∞ at `d` decimals, as a decimal string.
pub fn fmt_round_down(x: f64, d: u32) -> String {
    let m = 10f64.powi(d as i32);
    let v = (x * m).floor() / m;
    format!("{v:.prec$}", prec = d as usize)
}

/// Round toward +∞ at `d` decimals, as a decimal string.
pub fn fmt_round_up(x: f64, d: u32) -> String {
    let m = 10f64.powi(d as i32);
    let v = (x * m).ceil() / m;
    format!("{v:.prec$}", prec = d as usize)
}

/// CSV rows `i,p_i,theta(p_i)` for the sieved primes.
pub fn primes_csv(w: &mut impl Write, table: &PrimeTable) -> Result<()> {
    writeln!(w, "i,p_i,theta_p_i")?;
    let prefix = table.theta_prefix();
    for (i, &p) in table.primes().iter().enumerate() {
        writeln!(w, "{},{},{:.9}", i + 1, p, prefix[i])?;
    }
    Ok(())
}

/// CSV rows `n,log_g,p_plus` over [lo, hi].
pub fn landau_csv(w: &mut impl Write, table: &LandauTable, lo: usize, hi: usize) -> Result<()> {
    writeln!(w, "n,log_g,p_plus")?;
    for n in lo..=hi.min(table.n_max()) {
        writeln!(w, "{},{:.9},{}", n, table.log_g(n), table.p_plus(n))?;
    }
    Ok(())
}

/// Champion CSV for the real-valued kinds, with the table's rounding
/// direction (`up` for θ_d and δ_3, down for θ_min).
pub fn champions_csv_real(
    w: &mut impl Write,
    table: &RealChampions,
    digits: u32,
    up: bool,
) -> Result<()> {
    writeln!(w, "champion,value")?;
    for &(c, v) in table.entries() {
        let s = if up {
            fmt_round_up(v, digits)
        } else {
            fmt_round_down(v, digits)
        };
        writeln!(w, "{c},{s}")?;
    }
    writeln!(
        w,
        "# frontier {} (step value beyond bootstrap)",
        table.frontier()
    )?;
    Ok(())
}

/// Champion CSV for η_k: exact fractions.
pub fn champions_csv_ratio(w: &mut impl Write, table: &RatioChampions) -> Result<()> {
    writeln!(w, "champion,value")?;
    for (c, v) in table.entries() {
        writeln!(w, "{},{}/{}", c, v.numer(), v.denom())?;
    }
    writeln!(
        w,
        "# frontier {} (step value beyond bootstrap)",
        table.frontier()
    )?;
    Ok(())
}

/// One row of the greedy-run table: k, α_k, β_k, γ_{k+1}, {j}, D_k.
#[derive(Clone, Debug, serde::Serialize)]
pub struct GseqRow {
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma_next: f64,
    pub overlaps: Vec<usize>,
    pub d_k: f64,
}

pub fn gseq_rows(seq: &GSequence, y: f64, theta_min: &RealChampions) -> Result<Vec<GseqRow>> {
    let mut rows = Vec::with_capacity(seq.len());
    for k in 1..=seq.len() {
        rows.push(GseqRow {
            k,
            alpha: seq.alpha(k).to_f64(),
            beta: seq.beta(k).to_f64(),
            gamma_next: seq.gamma_f64(k + 1),
            overlaps: seq.overlap_set(k)?,
            d_k: crate::gseq::compute_dk(seq, y, k, theta_min)?,
        });
    }
    Ok(rows)
}

pub fn gseq_csv(w: &mut impl Write, rows: &[GseqRow]) -> Result<()> {
    writeln!(w, "k,alpha,beta,gamma_next,j_set,D_k")?;
    for r in rows {
        let js: Vec<String> = r.overlaps.iter().map(|j| j.to_string()).collect();
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.k,
            fmt_round_down(r.alpha, 4),
            fmt_round_down(r.beta, 4),
            fmt_round_down(r.gamma_next, 6),
            js.join(" "),
            fmt_round_down(r.d_k, 6),
        )?;
    }
    Ok(())
}

/// Superchampion CSV: P, n_P, log N_P, θ(P), ψ(P), and the oscillation
/// signs.
pub fn superchampions_csv(
    w: &mut impl Write,
    scs: &[crate::superchampions::Superchampion],
    primes: &PrimeTable,
) -> Result<()> {
    writeln!(
        w,
        "P,n_P,log_N,theta_P,psi_P,sign_P_minus_logN,sign_P_minus_theta,sign_psi_minus_P"
    )?;
    let rows = crate::superchampions::oscillation_signs(scs, primes)?;
    for (sc, row) in scs.iter().zip(&rows) {
        let theta = primes.theta_u64(sc.p)?;
        let psi = primes.psi(sc.p as f64)?;
        writeln!(
            w,
            "{},{},{:.9},{:.9},{:.9},{},{},{}",
            sc.p,
            sc.n_p,
            sc.log_n,
            theta,
            psi,
            row.sign_p_minus_log_n,
            row.sign_p_minus_theta,
            row.sign_psi_minus_p,
        )?;
    }
    Ok(())
}

pub fn reports_json(reports: &[crate::verify::VerificationReport]) -> Result<String> {
    serde_json::to_string_pretty(reports).map_err(|e| Error::Cache(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("primes.ldau");
        let t = PrimeTable::sieve(50_000).unwrap();
        save_primes(&path, &t).unwrap();
        let u = load_primes(&path).unwrap();
        assert_eq!(t.limit(), u.limit());
        assert_eq!(t.primes(), u.primes());
        // Byte-identical query results.
        assert_eq!(t.theta(49_999.0).unwrap(), u.theta(49_999.0).unwrap());
        assert_eq!(t.pi_count(12_345.0).unwrap(), u.pi_count(12_345.0).unwrap());
    }

    #[test]
    fn landau_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("landau.ldau");
        let t = LandauTable::build(500).unwrap();
        save_landau(&path, &t).unwrap();
        let u = load_landau(&path).unwrap();
        assert_eq!(t.n_max(), u.n_max());
        assert_eq!(t.prime_budget(), u.prime_budget());
        assert_eq!(t.log_g_all(), u.log_g_all());
        assert_eq!(t.p_plus_all(), u.p_plus_all());
        assert_eq!(
            t.factorization_of_g(215).unwrap(),
            u.factorization_of_g(215).unwrap()
        );
    }

    #[test]
    fn reports_reproducible_from_cache() {
        let dir = tempfile::tempdir().unwrap();
        let lpath = dir.path().join("landau.ldau");
        let ppath = dir.path().join("primes.ldau");
        let t = LandauTable::build(2_000).unwrap();
        let p = PrimeTable::sieve(200_000).unwrap();
        save_landau(&lpath, &t).unwrap();
        save_primes(&ppath, &p).unwrap();
        let t2 = load_landau(&lpath).unwrap();
        let p2 = load_primes(&ppath).unwrap();
        let a = crate::verify::run_all(&t, &p, 200).unwrap();
        let b = crate::verify::run_all(&t2, &p2, 200).unwrap();
        assert_eq!(reports_json(&a).unwrap(), reports_json(&b).unwrap());
    }

    #[test]
    fn rejects_foreign_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("junk.ldau");
        std::fs::write(&path, b"NOPE....").unwrap();
        assert!(load_primes(&path).is_err());
        let t = PrimeTable::sieve(100).unwrap();
        let ppath = dir.path().join("p.ldau");
        save_primes(&ppath, &t).unwrap();
        assert!(load_landau(&ppath).is_err());
    }

    #[test]
    fn rounding_directions() {
        assert_eq!(fmt_round_down(0.97477, 4), "0.9747");
        assert_eq!(fmt_round_up(1.8628071, 6), "1.862808");
        assert_eq!(fmt_round_down(0.23104906, 4), "0.2310");
        assert_eq!(fmt_round_up(4.93351, 4), "4.9336");
    }
}
