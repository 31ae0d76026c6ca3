#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace livkit::corpus {

enum class Origin { Authentic, SyntheticSrcOriginal, SyntheticTgtOriginal };

const char* origin_name(Origin o);
std::optional<Origin> parse_origin(std::string_view name);

struct SentencePair {
  std::string src, tgt;
  std::string src_lang, tgt_lang;
  Origin origin = Origin::Authentic;
  std::size_t line_no = 0;  // 1-based position in the source file
};

struct ParallelCorpus {
  std::vector<SentencePair> pairs;
  std::string src_lang, tgt_lang;
  std::string pivot_lang;  // non-empty for synthetic corpora
};

// Filter names, in the order the pipeline applies them. "length" is the
// token cap, "length_ratio" the ratio check; they are listed separately so
// the lenient preset can keep the cap while dropping the ratio.
extern const std::vector<std::string> kKnownFilters;

struct FilterConfig {
  std::vector<std::string> filters;  // enabled subset of kKnownFilters
  std::size_t max_tokens = 175;
  double max_len_ratio = 1.5;
  double punct_ratio_threshold = 0.5;
  bool lang_id_enabled = true;
  bool skip_punct_norm = false;
  std::vector<std::string> langs = {"en", "liv", "et", "lv"};

  static FilterConfig defaults();
  // The permissive treatment for tiny corpora in under-resourced languages:
  // no punctuation rewriting, no language identification, no length ratio.
  static FilterConfig lenient();

  bool has_filter(const std::string& name) const;
  void validate() const;
};

struct FilterDecision {
  bool kept = true;
  std::optional<std::string> rejecting_filter;
  std::string transformed_src, transformed_tgt;
};

// Rewrites curly quotes, dashes and similar Unicode punctuation to plain
// ASCII per the fixed table in docs/punctuation.md, drops non-printing
// characters (Cc except TAB, and Cf), maps Unicode space separators to
// ASCII space, collapses space runs and trims. Total: never fails; invalid
// UTF-8 bytes pass through untouched.
std::string normalize_punct(const std::string& line);

// NFKC + whitespace collapse: the canonical key used for eval-set overlap
// matching.
std::string overlap_key(const std::string& line);

class EvalIndex {
 public:
  EvalIndex() = default;
  void add_line(const std::string& line);
  void add_file(const std::string& path);
  bool contains(const std::string& line) const;  // line is keyed first
  std::size_t size() const { return keys_.size(); }

 private:
  std::unordered_set<std::string> keys_;
};

EvalIndex build_eval_index(const std::vector<std::string>& paths);

// Character-trigram multinomial language scorer, trained on per-language
// seed text. Scoring looks only at letters; lines without letters are not
// classified (treated as matching any declared language). An empty scorer
// acts as pass-through.
class LangScorer {
 public:
  LangScorer() = default;
  static LangScorer train(
      const std::map<std::string, std::vector<std::string>>& seed_lines);
  // Loads <dir>/<lang>.txt for every configured language that has a file.
  static LangScorer train_from_dir(const std::string& dir,
                                   const std::vector<std::string>& langs);

  bool empty() const { return models_.empty(); }
  std::optional<std::string> classify(const std::string& line) const;

 private:
  struct Model {
    std::map<std::u32string, std::size_t> trigrams;
    std::size_t total = 0;
  };
  std::map<std::string, Model> models_;
  std::size_t distinct_trigrams_ = 0;
};

FilterDecision apply_filters(const SentencePair& pair, const FilterConfig& cfg,
                             const EvalIndex* eval_index,
                             const LangScorer* lang_id);

// Monolingual variant: single-sided checks, with the identical-pair and
// length-ratio filters inapplicable.
FilterDecision filter_mono(const std::string& line, const std::string& lang,
                           const FilterConfig& cfg,
                           const EvalIndex* eval_index,
                           const LangScorer* lang_id);

// Runs the pipeline over all pairs, optionally fanning out over `jobs`
// worker threads. Results are positionally stable and bit-identical to the
// sequential run for any job count.
std::vector<FilterDecision> run_filters(const std::vector<SentencePair>& pairs,
                                        const FilterConfig& cfg,
                                        const EvalIndex* eval_index,
                                        const LangScorer* lang_id,
                                        unsigned jobs);

// Bitext loading: either two line-aligned files or a single TSV with one
// tab per line. Mismatched line counts are a hard error naming both counts.
ParallelCorpus load_bitext(const std::string& src_path,
                           const std::string& tgt_path,
                           const std::string& src_lang,
                           const std::string& tgt_lang);
ParallelCorpus load_bitext_tsv(const std::string& path,
                               const std::string& src_lang,
                               const std::string& tgt_lang);

// Flat key=value config text; '#' starts a comment. Unknown keys are a hard
// error. Returns the config plus the optional language-seed directory.
struct ParsedConfig {
  FilterConfig cfg;
  std::optional<std::string> lang_seed_dir;
};
ParsedConfig parse_filter_config(const std::vector<std::string>& lines);
ParsedConfig load_filter_config(const std::string& path);

}  // namespace livkit::corpus
