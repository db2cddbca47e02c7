//! JSON presheaf files.
//!
//! ```json
//! { "p": 2, "d": 1,
//!   "levels": [["*"], ["a", "b"]],
//!   "restrictions": { "1x1:0": [0, 0], "1x1:1": [0, 1], "0x1:": [0, 0], ... } }
//! ```
//!
//! The key `"<k>x<j>:<entries>"` names a `k x j` matrix `A: F^j -> F^k` by its
//! comma-separated row-major entries; the array gives, for each element of
//! level `k`, the index of its image in level `j`. Every matrix must appear.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::FinitePresheaf;
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, HomSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresheafFile {
    pub p: u32,
    pub d: usize,
    pub levels: Vec<Vec<String>>,
    pub restrictions: BTreeMap<String, Vec<u32>>,
}

impl PresheafFile {
    pub fn from_presheaf(f: &FinitePresheaf, homs: &HomSpace) -> Self {
        let mut restrictions = BTreeMap::new();
        for k in 0..=f.top() {
            for j in 0..=f.top() {
                for a in homs.maps(j, k) {
                    restrictions.insert(a.key(), f.restriction(k, j, a.index()).to_vec());
                }
            }
        }
        PresheafFile {
            p: f.prime(),
            d: f.top(),
            levels: (0..=f.top()).map(|k| f.labels(k).to_vec()).collect(),
            restrictions,
        }
    }

    /// Build the presheaf; functoriality is not checked here.
    pub fn to_presheaf(&self, homs: &HomSpace) -> Result<FinitePresheaf> {
        if homs.prime() != self.p || homs.top() != self.d {
            return Err(Error::Mismatch(format!(
                "file is over (p={}, d={}), hom space over (p={}, d={})",
                self.p,
                self.d,
                homs.prime(),
                homs.top()
            )));
        }
        let mut parsed: BTreeMap<(usize, usize, usize), &Vec<u32>> = BTreeMap::new();
        for (key, images) in &self.restrictions {
            let m = FpMatrix::parse_key(self.p, key)?;
            if m.rows() > self.d || m.cols() > self.d {
                return Err(Error::invalid(format!("restriction {} exceeds dimension {}", key, self.d)));
            }
            if images.len() != self.levels.get(m.rows()).map_or(0, Vec::len) {
                return Err(Error::invalid(format!("restriction {} has {} images", key, images.len())));
            }
            parsed.insert((m.rows(), m.cols(), m.index()), images);
        }
        FinitePresheaf::from_rule(homs, self.levels.clone(), |k, j, a, x| {
            let images = parsed
                .get(&(k, j, a.index()))
                .ok_or_else(|| Error::invalid(format!("missing restriction {}", a.key())))?;
            Ok(images[x] as usize)
        })
        .map_err(|e| match e {
            Error::Internal(msg) => Error::InvalidInput(msg),
            other => other,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use proptest::prelude::*;

    #[test]
    fn missing_and_malformed_keys() {
        let h = HomSpace::new(2, 1, &Caps::default()).unwrap();
        let f = FinitePresheaf::representable(&h, 1, &Caps::default()).unwrap();
        let mut file = PresheafFile::from_presheaf(&f, &h);
        assert_eq!(file.restrictions.len(), 1 + 1 + 1 + 2);
        assert!(file.restrictions.contains_key("0x1:"));
        file.restrictions.remove("1x1:1");
        assert!(file.to_presheaf(&h).is_err());
        let mut bad = PresheafFile::from_presheaf(&f, &h);
        bad.restrictions.insert("1x1:1".into(), vec![0, 7]);
        assert!(bad.to_presheaf(&h).is_err());
    }

    proptest! {
        #[test]
        fn json_round_trip(p in prop_oneof![Just(2u32), Just(3u32)], r in 0usize..3, d in 0usize..3) {
            let caps = Caps::default();
            let h = HomSpace::new(p, d, &caps).unwrap();
            let f = FinitePresheaf::representable(&h, r, &caps).unwrap();
            let text = PresheafFile::from_presheaf(&f, &h).to_json().unwrap();
            let back = PresheafFile::from_json(&text).unwrap().to_presheaf(&h).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
