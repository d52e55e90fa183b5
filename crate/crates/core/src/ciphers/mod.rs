//! Cipher implementations: shift, monoalphabetic substitution, and a toy
//! substitution-permutation network. Keys are immutable and the
//! encrypt/decrypt functions are pure.

mod shift;
mod spn;
mod substitution;

pub use shift::{shift_decrypt, shift_encrypt, ShiftKey};
pub use spn::{
    decrypt_block, encrypt_block, spn_decrypt, spn_encrypt, SpnKey, SpnParameters, DEFAULT_PBOX,
    DEFAULT_SBOX, SPN_FILE_MAGIC,
};
pub use substitution::{substitution_decrypt, substitution_encrypt, SubstitutionKey};
