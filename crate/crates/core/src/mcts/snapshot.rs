//! Binary snapshot of Monte Carlo knowledge so a long search phase can be
//! reused across solver runs.
//!
//! Layout, all integers and floats little-endian:
//!
//! ```text
//! magic        8 bytes  "GSMCSNAP"
//! version      u32      = 1
//! alpha        f64
//! code_space   u32
//! weights      f64 * code_space
//! playouts     u64
//! entry_count  u64
//! entries      entry_count times, ascending hash:
//!   hash         u64
//!   nb_playouts  u32
//!   edge_count   u32
//!   edges        edge_count times: code u32, playouts u32, wins u32
//! ```
//!
//! AMAF statistics are not stored; they only matter during the search.

use std::io::{Read, Write};

use super::{EdgeStats, MctsEntry, MctsTable, MonteCarloKnowledge, PolicyTable};
use crate::engine::StateHash;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"GSMCSNAP";
pub const VERSION: u32 = 1;

pub fn write_snapshot<W: Write>(out: &mut W, knowledge: &MonteCarloKnowledge) -> Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&VERSION.to_le_bytes())?;
    out.write_all(&knowledge.policy.alpha().to_le_bytes())?;
    out.write_all(&(knowledge.policy.code_space() as u32).to_le_bytes())?;
    for w in knowledge.policy.weights() {
        out.write_all(&w.to_le_bytes())?;
    }
    out.write_all(&knowledge.playouts.to_le_bytes())?;
    let entries = knowledge.table.sorted();
    out.write_all(&(entries.len() as u64).to_le_bytes())?;
    for (hash, e) in entries {
        out.write_all(&hash.0.to_le_bytes())?;
        out.write_all(&e.nb_playouts.to_le_bytes())?;
        out.write_all(&(e.edges.len() as u32).to_le_bytes())?;
        for edge in &e.edges {
            out.write_all(&edge.code.to_le_bytes())?;
            out.write_all(&edge.playouts.to_le_bytes())?;
            out.write_all(&edge.wins.to_le_bytes())?;
        }
    }
    Ok(())
}

fn read_array<const N: usize, R: Read>(input: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    input.read_exact(&mut buf).map_err(|e| Error::Snapshot(format!("truncated snapshot: {e}")))?;
    Ok(buf)
}

fn read_u32<R: Read>(input: &mut R) -> Result<u32> {
    Ok(u32::from_le_bytes(read_array(input)?))
}

fn read_u64<R: Read>(input: &mut R) -> Result<u64> {
    Ok(u64::from_le_bytes(read_array(input)?))
}

pub fn read_snapshot<R: Read>(input: &mut R) -> Result<MonteCarloKnowledge> {
    if &read_array::<8, _>(input)? != MAGIC {
        return Err(Error::Snapshot("bad magic".into()));
    }
    let version = read_u32(input)?;
    if version != VERSION {
        return Err(Error::Snapshot(format!("unsupported version {version}")));
    }
    let alpha = f64::from_le_bytes(read_array(input)?);
    let code_space = read_u32(input)? as usize;
    let weights = (0..code_space)
        .map(|_| Ok(f64::from_le_bytes(read_array(input)?)))
        .collect::<Result<Vec<_>>>()?;
    let playouts = read_u64(input)?;
    let count = read_u64(input)?;
    let mut table = MctsTable::default();
    for _ in 0..count {
        let hash = StateHash(read_u64(input)?);
        let nb_playouts = read_u32(input)?;
        let edge_count = read_u32(input)?;
        let edges = (0..edge_count)
            .map(|_| {
                let code = read_u32(input)?;
                if code as usize >= code_space {
                    return Err(Error::Snapshot(format!("code {code} outside code space")));
                }
                Ok(EdgeStats { code, playouts: read_u32(input)?, wins: read_u32(input)? })
            })
            .collect::<Result<Vec<_>>>()?;
        table.insert(hash, MctsEntry { nb_playouts, edges, amaf: Vec::new() });
    }
    Ok(MonteCarloKnowledge { table, policy: PolicyTable::from_weights(weights, alpha), playouts })
}
