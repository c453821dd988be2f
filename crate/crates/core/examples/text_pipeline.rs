//! Tokenization, vocabulary building and vectorization.
//!
//! ```bash
//! cargo run -p confidex --example text_pipeline
//! ```

use confidex::text::{build_vocabulary, tokenize, vectorize, VectorizeMode};

fn main() -> confidex::Result<()> {
    let docs = [
        "The rocket reached orbit; the crew cheered.",
        "A second rocket launch is planned for May.",
        "Engine oil and brake fluid, checked twice!",
    ];
    let tokens: Vec<_> = docs.iter().map(|d| tokenize(d)).collect();
    for t in &tokens {
        println!("{:?}", t.tokens());
    }

    let vocab = build_vocabulary(&tokens, 1)?;
    println!(
        "\nvocabulary ({} tokens): {:?}",
        vocab.len(),
        vocab.tokens()
    );

    let counts = vectorize(&tokens, &vocab, VectorizeMode::Counts);
    let binary = vectorize(&tokens, &vocab, VectorizeMode::Binary);
    for (c, b) in counts.iter().zip(&binary) {
        println!(
            "counts {:?}\nbinary {:?}",
            c.to_dense(vocab.len()),
            b.to_dense(vocab.len())
        );
    }

    let mut csv = Vec::new();
    vocab.write_csv(&mut csv)?;
    print!(
        "\n{}",
        String::from_utf8_lossy(&csv)
            .lines()
            .take(4)
            .collect::<Vec<_>>()
            .join("\n")
    );
    println!("\n...");
    Ok(())
}
