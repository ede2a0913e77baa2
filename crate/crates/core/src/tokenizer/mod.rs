//! WordPiece tokenization with Unicode-preserving pre-tokenization.

mod pretokenize;
mod train;
mod vocab;
mod wordpiece;

pub use pretokenize::{is_punctuation, pre_tokenize, PreTokenizerConfig};
pub use train::{
    merged_token, train_wordpiece, train_wordpiece_with_merges, TrainedWordPiece, WordCounts, WordPieceTrainer,
};
pub use vocab::{default_special_tokens, Vocabulary, CONTINUATION_PREFIX, DEFAULT_SPECIAL_TOKENS, UNK_TOKEN};
pub use wordpiece::{decode, encode, encode_word, MAX_WORD_CHARS};
