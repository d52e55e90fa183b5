//! A toy substitution-permutation network for generating test ciphertexts.
//!
//! 16-bit blocks, 4 rounds by default. Each round mixes a round key, pushes
//! every nibble through the S-box and permutes the 16 bits; the final round
//! skips the permutation and mixes one extra key. The five round keys are
//! overlapping 16-bit windows of the 32-bit master key taken at 4-bit steps.
//!
//! Bit and nibble 0 are the most significant. This cipher operates on raw
//! bytes rather than alphabet indices, because a 26-letter alphabet does not
//! align with 16-bit blocks.

use crate::error::{Error, Result};

/// Default S-box (bijective on 4-bit nibbles).
pub const DEFAULT_SBOX: [u8; 16] = [
    0xE, 0x4, 0xD, 0x1, 0x2, 0xF, 0xB, 0x8, 0x3, 0xA, 0x6, 0xC, 0x5, 0x9, 0x0, 0x7,
];

/// Default P-box: `DEFAULT_PBOX[i]` is the destination of input bit `i`.
/// This permutation is its own inverse.
pub const DEFAULT_PBOX: [u8; 16] = [0, 4, 8, 12, 1, 5, 9, 13, 2, 6, 10, 14, 3, 7, 11, 15];

/// Magic prefix of the SPN ciphertext file format.
pub const SPN_FILE_MAGIC: [u8; 4] = *b"SPN1";

/// S-box, P-box and round count. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpnParameters {
    sbox: [u8; 16],
    sbox_inv: [u8; 16],
    pbox: [u8; 16],
    pbox_inv: [u8; 16],
    rounds: usize,
}

impl SpnParameters {
    pub fn new(sbox: [u8; 16], pbox: [u8; 16], rounds: usize) -> Result<Self> {
        if rounds == 0 {
            return Err(Error::InvalidConfig("SPN needs at least one round".into()));
        }
        let sbox_inv = invert(&sbox, "sbox")?;
        let pbox_inv = invert(&pbox, "pbox")?;
        Ok(Self {
            sbox,
            sbox_inv,
            pbox,
            pbox_inv,
            rounds,
        })
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }
}

impl Default for SpnParameters {
    fn default() -> Self {
        Self::new(DEFAULT_SBOX, DEFAULT_PBOX, 4).expect("default parameters are valid")
    }
}

fn invert(table: &[u8; 16], name: &str) -> Result<[u8; 16]> {
    let mut inv = [0xFFu8; 16];
    for (i, &v) in table.iter().enumerate() {
        if v > 0xF || inv[v as usize] != 0xFF {
            return Err(Error::InvalidConfig(format!("{name} is not bijective")));
        }
        inv[v as usize] = i as u8;
    }
    Ok(inv)
}

/// A 32-bit master key. Round keys are derived, never stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpnKey {
    master: u32,
}

impl SpnKey {
    pub fn new(master: u32) -> Self {
        Self { master }
    }

    /// Parses exactly eight hex digits.
    pub fn from_hex(s: &str) -> Result<Self> {
        if s.len() != 8 || !s.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::KeyFormat(format!(
                "SPN key must be 8 hex digits, got {s:?}"
            )));
        }
        Ok(Self {
            master: u32::from_str_radix(s, 16).expect("validated hex"),
        })
    }

    pub fn master(&self) -> u32 {
        self.master
    }

    /// `rounds + 1` keys: 16-bit windows starting at bit `4*i` of the master
    /// key, wrapping around past round 4.
    pub fn round_keys(&self, rounds: usize) -> Vec<u16> {
        (0..=rounds)
            .map(|i| (self.master.rotate_left((4 * i % 32) as u32) >> 16) as u16)
            .collect()
    }
}

fn apply_sbox(block: u16, sbox: &[u8; 16]) -> u16 {
    let mut out = 0u16;
    for n in 0..4 {
        let shift = 12 - 4 * n;
        let nib = (block >> shift) & 0xF;
        out |= (sbox[nib as usize] as u16) << shift;
    }
    out
}

fn apply_pbox(block: u16, pbox: &[u8; 16]) -> u16 {
    let mut out = 0u16;
    for (i, &dest) in pbox.iter().enumerate() {
        let bit = (block >> (15 - i)) & 1;
        out |= bit << (15 - dest as usize);
    }
    out
}

pub fn encrypt_block(block: u16, key: &SpnKey, params: &SpnParameters) -> u16 {
    let ks = key.round_keys(params.rounds);
    let mut b = block;
    for &k in ks.iter().take(params.rounds - 1) {
        b ^= k;
        b = apply_sbox(b, &params.sbox);
        b = apply_pbox(b, &params.pbox);
    }
    b ^= ks[params.rounds - 1];
    b = apply_sbox(b, &params.sbox);
    b ^ ks[params.rounds]
}

pub fn decrypt_block(block: u16, key: &SpnKey, params: &SpnParameters) -> u16 {
    let ks = key.round_keys(params.rounds);
    let mut b = block ^ ks[params.rounds];
    b = apply_sbox(b, &params.sbox_inv);
    b ^= ks[params.rounds - 1];
    for &k in ks.iter().take(params.rounds - 1).rev() {
        b = apply_pbox(b, &params.pbox_inv);
        b = apply_sbox(b, &params.sbox_inv);
        b ^= k;
    }
    b
}

/// Encrypts a byte stream into the SPN file format: magic `SPN1`, the
/// original bit length as a big-endian u64, then 16-bit ciphertext blocks.
/// The final partial block is zero-padded.
pub fn spn_encrypt(plain: &[u8], key: &SpnKey, params: &SpnParameters) -> Vec<u8> {
    let bit_len = plain.len() as u64 * 8;
    let mut out = Vec::with_capacity(12 + plain.len() + 2);
    out.extend_from_slice(&SPN_FILE_MAGIC);
    out.extend_from_slice(&bit_len.to_be_bytes());
    for chunk in plain.chunks(2) {
        let block = u16::from_be_bytes([chunk[0], *chunk.get(1).unwrap_or(&0)]);
        out.extend_from_slice(&encrypt_block(block, key, params).to_be_bytes());
    }
    out
}

/// Inverse of [`spn_encrypt`]: parses the header, decrypts the blocks and
/// restores the exact original length.
pub fn spn_decrypt(data: &[u8], key: &SpnKey, params: &SpnParameters) -> Result<Vec<u8>> {
    if data.len() < 12 {
        return Err(Error::SpnFormat("input shorter than the header".into()));
    }
    if data[..4] != SPN_FILE_MAGIC {
        return Err(Error::SpnFormat("missing SPN1 magic".into()));
    }
    let bit_len = u64::from_be_bytes(data[4..12].try_into().unwrap());
    let body = &data[12..];
    if !body.len().is_multiple_of(2) {
        return Err(Error::SpnFormat(
            "ciphertext is not whole 16-bit blocks".into(),
        ));
    }
    let blocks = body.len() / 2;
    let expected_blocks = (bit_len as usize).div_ceil(16);
    if blocks != expected_blocks {
        return Err(Error::SpnFormat(format!(
            "header declares {expected_blocks} blocks, found {blocks}"
        )));
    }
    let mut out = Vec::with_capacity(blocks * 2);
    for chunk in body.chunks_exact(2) {
        let block = u16::from_be_bytes([chunk[0], chunk[1]]);
        out.extend_from_slice(&decrypt_block(block, key, params).to_be_bytes());
    }
    let byte_len = (bit_len as usize).div_ceil(8);
    out.truncate(byte_len);
    // mask padding bits when the original length was not byte-aligned
    let tail_bits = (bit_len % 8) as u32;
    if tail_bits != 0 {
        if let Some(last) = out.last_mut() {
            *last &= 0xFFu8 << (8 - tail_bits);
        }
    }
    Ok(out)
}
