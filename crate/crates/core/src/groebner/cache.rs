//! On-disk cache of reduced Gröbner bases.
//!
//! One file per basis, named by the SHA-256 of the canonical inputs
//! (field descriptor, order, generators). Layout:
//!
//! ```text
//! "QHGB" | version: u32 | nvars: u32 | count: u32 | polynomial*
//! polynomial = nterms: u32 | (exponent: u16 * nvars | int numer | int denom)*
//! int        = len: u32 | two's-complement little-endian bytes
//! ```
//!
//! All integers little-endian. Anything unreadable or failing the
//! re-verification in [`PolyBasis::from_reduced`] is treated as a miss, so the
//! directory is always safe to delete.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use super::engine::{Budget, GbError};
use super::ideal::{Ideal, PolyBasis};
use crate::field::NumberField;
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::Rational;

const MAGIC: &[u8; 4] = b"QHGB";
const VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct GbCache {
    dir: PathBuf,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CacheInfo {
    pub entries: usize,
    pub bytes: u64,
}

impl GbCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(ideal: &Ideal, order: &MonomialOrder, field: &NumberField) -> String {
        let mut h = Sha256::new();
        h.update(field.descriptor().as_bytes());
        h.update([0]);
        h.update(order.name().as_bytes());
        h.update([0]);
        h.update(encode(ideal.nvars(), ideal.generators()));
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.gb"))
    }

    pub fn get(&self, ideal: &Ideal, order: &MonomialOrder, field: &NumberField) -> Option<PolyBasis> {
        let bytes = fs::read(self.path(&Self::key(ideal, order, field))).ok()?;
        let (nvars, polys) = decode(&bytes)?;
        if nvars != ideal.nvars() {
            return None;
        }
        PolyBasis::from_reduced(ideal, order, &polys)
    }

    pub fn put(&self, ideal: &Ideal, order: &MonomialOrder, field: &NumberField, basis: &PolyBasis) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(&Self::key(ideal, order, field));
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, encode(basis.nvars(), &basis.polys()))?;
        fs::rename(tmp, path)
    }

    /// Cached lookup, computing and storing on a miss. Write failures are
    /// ignored: the cache is an optimization only.
    pub fn groebner(
        &self,
        ideal: &Ideal,
        order: &MonomialOrder,
        field: &NumberField,
        budget: Budget,
    ) -> Result<PolyBasis, GbError> {
        if let Some(b) = self.get(ideal, order, field) {
            return Ok(b);
        }
        let b = ideal.groebner(order, budget)?;
        let _ = self.put(ideal, order, field, &b);
        Ok(b)
    }

    pub fn info(&self) -> io::Result<CacheInfo> {
        let mut info = CacheInfo::default();
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(info),
            Err(e) => return Err(e),
        };
        for entry in rd {
            let entry = entry?;
            if entry.path().extension().is_some_and(|e| e == "gb") {
                info.entries += 1;
                info.bytes += entry.metadata()?.len();
            }
        }
        Ok(info)
    }

    /// Removes cache files; returns how many were deleted.
    pub fn clear(&self) -> io::Result<usize> {
        let mut n = 0;
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e),
        };
        for entry in rd {
            let p = entry?.path();
            if p.extension().is_some_and(|e| e == "gb" || e == "tmp") {
                fs::remove_file(p)?;
                n += 1;
            }
        }
        Ok(n)
    }
}

fn put_int(out: &mut Vec<u8>, x: &BigInt) {
    let b = x.to_signed_bytes_le();
    out.extend((b.len() as u32).to_le_bytes());
    out.extend(b);
}

fn encode(nvars: usize, polys: &[Polynomial]) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend(MAGIC);
    out.extend(VERSION.to_le_bytes());
    out.extend((nvars as u32).to_le_bytes());
    out.extend((polys.len() as u32).to_le_bytes());
    for p in polys {
        out.extend((p.len() as u32).to_le_bytes());
        for (m, c) in p.terms() {
            for &e in m.exps() {
                out.extend(e.to_le_bytes());
            }
            put_int(&mut out, c.numer());
            put_int(&mut out, c.denom());
        }
    }
    out
}

struct Reader<'a>(&'a [u8]);

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Option<&[u8]> {
        if self.0.len() < n {
            return None;
        }
        let (a, b) = self.0.split_at(n);
        self.0 = b;
        Some(a)
    }
    fn u32(&mut self) -> Option<u32> {
        Some(u32::from_le_bytes(self.take(4)?.try_into().ok()?))
    }
    fn u16(&mut self) -> Option<u16> {
        Some(u16::from_le_bytes(self.take(2)?.try_into().ok()?))
    }
    fn int(&mut self) -> Option<BigInt> {
        let n = self.u32()? as usize;
        Some(BigInt::from_signed_bytes_le(self.take(n)?))
    }
}

fn decode(bytes: &[u8]) -> Option<(usize, Vec<Polynomial>)> {
    let mut r = Reader(bytes);
    if r.take(4)? != MAGIC || r.u32()? != VERSION {
        return None;
    }
    let nvars = r.u32()? as usize;
    let count = r.u32()? as usize;
    let mut polys = Vec::with_capacity(count.min(1 << 16));
    for _ in 0..count {
        let nterms = r.u32()? as usize;
        let mut terms = Vec::with_capacity(nterms.min(1 << 16));
        for _ in 0..nterms {
            let exps = (0..nvars).map(|_| r.u16()).collect::<Option<Vec<_>>>()?;
            let (num, den) = (r.int()?, r.int()?);
            if den == BigInt::from(0) {
                return None;
            }
            terms.push((Monomial::from_exps(&exps), Rational::new(num, den)));
        }
        polys.push(Polynomial::from_terms(nvars, terms));
    }
    r.0.is_empty().then_some((nvars, polys))
}
