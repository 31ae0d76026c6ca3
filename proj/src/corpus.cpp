#include "livkit/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <thread>

#include "livkit/error.hpp"
#include "livkit/io.hpp"
#include "livkit/unicode.hpp"

namespace livkit::corpus {

const char* origin_name(Origin o) {
  switch (o) {
    case Origin::Authentic: return "authentic";
    case Origin::SyntheticSrcOriginal: return "synthetic-src-original";
    case Origin::SyntheticTgtOriginal: return "synthetic-tgt-original";
  }
  return "?";
}

std::optional<Origin> parse_origin(std::string_view name) {
  if (name == "authentic") return Origin::Authentic;
  if (name == "synthetic-src-original") return Origin::SyntheticSrcOriginal;
  if (name == "synthetic-tgt-original") return Origin::SyntheticTgtOriginal;
  return std::nullopt;
}

const std::vector<std::string> kKnownFilters = {
    "lang_id", "punct_ratio", "identical", "url",
    "eval_overlap", "length", "length_ratio"};

FilterConfig FilterConfig::defaults() {
  FilterConfig cfg;
  cfg.filters = kKnownFilters;
  return cfg;
}

FilterConfig FilterConfig::lenient() {
  FilterConfig cfg = defaults();
  cfg.skip_punct_norm = true;
  cfg.lang_id_enabled = false;
  cfg.filters.erase(
      std::remove(cfg.filters.begin(), cfg.filters.end(), "length_ratio"),
      cfg.filters.end());
  return cfg;
}

bool FilterConfig::has_filter(const std::string& name) const {
  return std::find(filters.begin(), filters.end(), name) != filters.end();
}

void FilterConfig::validate() const {
  for (const std::string& f : filters) {
    if (std::find(kKnownFilters.begin(), kKnownFilters.end(), f) ==
        kKnownFilters.end())
      throw ValidationError("unknown filter name: " + f);
  }
  if (max_tokens == 0) throw ValidationError("max_tokens must be positive");
  if (max_len_ratio <= 0.0)
    throw ValidationError("max_len_ratio must be positive");
  if (punct_ratio_threshold <= 0.0)
    throw ValidationError("punct_ratio_threshold must be positive");
  if (langs.empty()) throw ValidationError("language set must be non-empty");
}

namespace {

// docs/punctuation.md documents this table; keep the two in sync.
struct PunctMap {
  char32_t from;
  const char* to;
};

const PunctMap kPunctMap[] = {
    {0x201C, "\""}, {0x201D, "\""}, {0x201E, "\""}, {0x201F, "\""},
    {0x00AB, "\""}, {0x00BB, "\""}, {0x300A, "\""}, {0x300B, "\""},
    {0x300C, "\""}, {0x300D, "\""}, {0x300E, "\""}, {0x300F, "\""},
    {0x2018, "'"},  {0x2019, "'"},  {0x201A, "'"},  {0x201B, "'"},
    {0x00B4, "'"},  {0x0060, "'"},  {0x2032, "'"},
    {0x2010, "-"},  {0x2011, "-"},  {0x2012, "-"},  {0x2013, "-"},
    {0x2014, "-"},  {0x2015, "-"},  {0x2212, "-"},  {0x2501, "-"},
    {0x2026, "..."},
    {0x3001, ","},  {0x3002, "."},  {0xFF61, "."},  {0xFF64, ","},
    {0x2236, ":"},
};

const char* punct_map_lookup(char32_t cp) {
  for (const PunctMap& m : kPunctMap)
    if (m.from == cp) return m.to;
  return nullptr;
}

bool ascii_icontains(const std::string& haystack, const std::string& needle) {
  if (needle.empty() || haystack.size() < needle.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      char a = haystack[i + j];
      char b = needle[j];
      if (std::tolower(static_cast<unsigned char>(a)) !=
          std::tolower(static_cast<unsigned char>(b))) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

bool contains_url(const std::string& s) {
  return ascii_icontains(s, "http://") || ascii_icontains(s, "https://") ||
         ascii_icontains(s, "www.");
}

double punct_ratio(const std::string& s) {
  std::u32string cps = uni::decode_utf8_lossy(s);
  std::size_t punct = 0, non_space = 0;
  for (char32_t c : cps) {
    if (uni::is_py_space(c)) continue;
    ++non_space;
    if (uni::is_punct(c)) ++punct;
  }
  if (non_space == 0) return 0.0;
  return static_cast<double>(punct) / static_cast<double>(non_space);
}

std::string collapse_ws(const std::string& s) {
  std::u32string cps = uni::decode_utf8_lossy(s);
  std::u32string out;
  out.reserve(cps.size());
  bool pending_space = false;
  for (char32_t c : cps) {
    if (uni::is_py_space(c)) {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(U' ');
      pending_space = false;
    }
    out.push_back(c);
  }
  return uni::encode_utf8(out);
}

bool lang_mismatch(const LangScorer& scorer, const std::string& line,
                   const std::string& declared) {
  auto predicted = scorer.classify(line);
  return predicted.has_value() && *predicted != declared;
}

}  // namespace

std::string normalize_punct(const std::string& line) {
  std::u32string cps = uni::decode_utf8_lossy(line);
  std::string out;
  out.reserve(line.size());
  for (char32_t c : cps) {
    if (c == U'\t') {
      out.push_back('\t');
      continue;
    }
    if (uni::is_control(c) || uni::is_format(c)) continue;
    if (uni::is_space_sep(c)) {
      out.push_back(' ');
      continue;
    }
    if (const char* mapped = punct_map_lookup(c)) {
      out += mapped;
      continue;
    }
    if (c >= 0xFF01 && c <= 0xFF5E) {  // fullwidth ASCII block
      out.push_back(static_cast<char>(c - 0xFEE0));
      continue;
    }
    out += uni::encode_utf8(std::u32string_view(&c, 1));
  }
  // Collapse space/tab runs and trim.
  std::string collapsed;
  collapsed.reserve(out.size());
  bool pending = false;
  for (char ch : out) {
    if (ch == ' ' || ch == '\t') {
      if (!collapsed.empty()) pending = true;
      continue;
    }
    if (pending) {
      collapsed.push_back(' ');
      pending = false;
    }
    collapsed.push_back(ch);
  }
  return collapsed;
}

std::string overlap_key(const std::string& line) {
  return collapse_ws(uni::normalize(line, uni::Form::NFKC));
}

void EvalIndex::add_line(const std::string& line) {
  keys_.insert(overlap_key(line));
}

void EvalIndex::add_file(const std::string& path) {
  for (const std::string& line : io::read_lines(path)) add_line(line);
}

bool EvalIndex::contains(const std::string& line) const {
  return keys_.count(overlap_key(line)) != 0;
}

EvalIndex build_eval_index(const std::vector<std::string>& paths) {
  EvalIndex index;
  for (const std::string& p : paths) index.add_file(p);
  return index;
}

LangScorer LangScorer::train(
    const std::map<std::string, std::vector<std::string>>& seed_lines) {
  LangScorer scorer;
  std::unordered_set<std::string> seen_trigrams;
  for (const auto& [lang, lines] : seed_lines) {
    Model model;
    for (const std::string& line : lines) {
      // Letters only, everything else acts as a boundary.
      std::u32string cps = uni::decode_utf8_lossy(line);
      std::u32string text = {U' '};
      for (char32_t c : cps)
        text.push_back(uni::is_letter(c) ? c : U' ');
      text.push_back(U' ');
      for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
        std::u32string tri = text.substr(i, 3);
        if (tri == U"   " || tri[1] == U' ') continue;
        ++model.trigrams[tri];
        ++model.total;
        seen_trigrams.insert(uni::encode_utf8(tri));
      }
    }
    if (model.total > 0) scorer.models_.emplace(lang, std::move(model));
  }
  scorer.distinct_trigrams_ = std::max<std::size_t>(seen_trigrams.size(), 1);
  return scorer;
}

LangScorer LangScorer::train_from_dir(const std::string& dir,
                                      const std::vector<std::string>& langs) {
  std::map<std::string, std::vector<std::string>> seeds;
  for (const std::string& lang : langs) {
    std::string path = dir + "/" + lang + ".txt";
    if (std::filesystem::exists(path)) seeds[lang] = io::read_lines(path);
  }
  if (seeds.empty())
    throw DataError("no language seed files (<lang>.txt) found in " + dir);
  return train(seeds);
}

std::optional<std::string> LangScorer::classify(const std::string& line) const {
  if (models_.empty()) return std::nullopt;
  std::u32string cps = uni::decode_utf8_lossy(line);
  std::u32string text = {U' '};
  for (char32_t c : cps) text.push_back(uni::is_letter(c) ? c : U' ');
  text.push_back(U' ');

  std::vector<std::u32string> trigrams;
  for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
    std::u32string tri = text.substr(i, 3);
    if (tri == U"   " || tri[1] == U' ') continue;
    trigrams.push_back(std::move(tri));
  }
  if (trigrams.empty()) return std::nullopt;  // nothing to classify

  // Additive smoothing over the union trigram inventory.
  const double alpha = 0.1;
  const double vocab = static_cast<double>(distinct_trigrams_) + 1.0;
  std::string best_lang;
  double best_score = 0.0;
  bool first = true;
  for (const auto& [lang, model] : models_) {
    double denom = static_cast<double>(model.total) + alpha * vocab;
    double score = 0.0;
    for (const std::u32string& tri : trigrams) {
      auto it = model.trigrams.find(tri);
      double count = it == model.trigrams.end()
                         ? 0.0
                         : static_cast<double>(it->second);
      score += std::log((count + alpha) / denom);
    }
    // Ties break toward the lexicographically smallest code (map order).
    if (first || score > best_score) {
      best_lang = lang;
      best_score = score;
      first = false;
    }
  }
  return best_lang;
}

namespace {

struct SideTexts {
  std::string src, tgt;
  bool has_tgt;
};

FilterDecision run_pipeline(const std::string& raw_src,
                            const std::string& raw_tgt, bool bilingual,
                            const std::string& src_lang,
                            const std::string& tgt_lang,
                            const FilterConfig& cfg,
                            const EvalIndex* eval_index,
                            const LangScorer* lang_id) {
  FilterDecision d;
  d.transformed_src = raw_src;
  d.transformed_tgt = raw_tgt;

  auto reject = [&](const char* name) {
    d.kept = false;
    d.rejecting_filter = name;
    return d;
  };

  if (!uni::decode_utf8(raw_src) || (bilingual && !uni::decode_utf8(raw_tgt)))
    return reject("encoding");

  if (!cfg.skip_punct_norm) {
    d.transformed_src = normalize_punct(raw_src);
    if (bilingual) d.transformed_tgt = normalize_punct(raw_tgt);
  }
  const std::string& src = d.transformed_src;
  const std::string& tgt = d.transformed_tgt;

  if (cfg.lang_id_enabled && cfg.has_filter("lang_id") && lang_id &&
      !lang_id->empty()) {
    if (lang_mismatch(*lang_id, src, src_lang)) return reject("lang_id");
    if (bilingual && lang_mismatch(*lang_id, tgt, tgt_lang))
      return reject("lang_id");
  }

  if (cfg.has_filter("punct_ratio")) {
    if (punct_ratio(src) > cfg.punct_ratio_threshold ||
        (bilingual && punct_ratio(tgt) > cfg.punct_ratio_threshold))
      return reject("punct_ratio");
  }

  if (bilingual && cfg.has_filter("identical") && src == tgt)
    return reject("identical");

  if (cfg.has_filter("url")) {
    if (contains_url(src) || (bilingual && contains_url(tgt)))
      return reject("url");
  }

  if (cfg.has_filter("eval_overlap") && eval_index) {
    if (eval_index->contains(src) || (bilingual && eval_index->contains(tgt)))
      return reject("eval_overlap");
  }

  std::size_t src_tokens = io::count_ws_tokens(src);
  std::size_t tgt_tokens = bilingual ? io::count_ws_tokens(tgt) : 0;
  if (cfg.has_filter("length")) {
    if (src_tokens > cfg.max_tokens ||
        (bilingual && tgt_tokens > cfg.max_tokens))
      return reject("length");
  }
  if (bilingual && cfg.has_filter("length_ratio")) {
    double a = static_cast<double>(src_tokens);
    double b = static_cast<double>(tgt_tokens);
    if (a == 0.0 || b == 0.0 || a / b > cfg.max_len_ratio ||
        b / a > cfg.max_len_ratio)
      return reject("length_ratio");
  }

  return d;
}

}  // namespace

FilterDecision apply_filters(const SentencePair& pair, const FilterConfig& cfg,
                             const EvalIndex* eval_index,
                             const LangScorer* lang_id) {
  cfg.validate();
  auto known = [&](const std::string& lang) {
    return std::find(cfg.langs.begin(), cfg.langs.end(), lang) !=
           cfg.langs.end();
  };
  if (!known(pair.src_lang) || !known(pair.tgt_lang))
    throw ValidationError("language code outside the configured set: " +
                          pair.src_lang + "-" + pair.tgt_lang);
  return run_pipeline(pair.src, pair.tgt, true, pair.src_lang, pair.tgt_lang,
                      cfg, eval_index, lang_id);
}

FilterDecision filter_mono(const std::string& line, const std::string& lang,
                           const FilterConfig& cfg,
                           const EvalIndex* eval_index,
                           const LangScorer* lang_id) {
  cfg.validate();
  return run_pipeline(line, "", false, lang, "", cfg, eval_index, lang_id);
}

std::vector<FilterDecision> run_filters(const std::vector<SentencePair>& pairs,
                                        const FilterConfig& cfg,
                                        const EvalIndex* eval_index,
                                        const LangScorer* lang_id,
                                        unsigned jobs) {
  cfg.validate();
  std::vector<FilterDecision> out(pairs.size());
  if (jobs == 0) jobs = 1;
  jobs = std::min<unsigned>(jobs, std::max<std::size_t>(pairs.size(), 1));

  auto work = [&](unsigned worker) {
    for (std::size_t i = worker; i < pairs.size(); i += jobs)
      out[i] = apply_filters(pairs[i], cfg, eval_index, lang_id);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (std::thread& t : threads) t.join();
  }
  return out;
}

ParallelCorpus load_bitext(const std::string& src_path,
                           const std::string& tgt_path,
                           const std::string& src_lang,
                           const std::string& tgt_lang) {
  std::vector<std::string> src = io::read_lines(src_path);
  std::vector<std::string> tgt = io::read_lines(tgt_path);
  if (src.size() != tgt.size()) {
    std::ostringstream os;
    os << "line count mismatch: " << src_path << " has " << src.size()
       << " lines but " << tgt_path << " has " << tgt.size();
    throw DataError(os.str());
  }
  ParallelCorpus corpus;
  corpus.src_lang = src_lang;
  corpus.tgt_lang = tgt_lang;
  corpus.pairs.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i)
    corpus.pairs.push_back(SentencePair{std::move(src[i]), std::move(tgt[i]),
                                        src_lang, tgt_lang, Origin::Authentic,
                                        i + 1});
  return corpus;
}

ParallelCorpus load_bitext_tsv(const std::string& path,
                               const std::string& src_lang,
                               const std::string& tgt_lang) {
  std::vector<std::string> lines = io::read_lines(path);
  ParallelCorpus corpus;
  corpus.src_lang = src_lang;
  corpus.tgt_lang = tgt_lang;
  corpus.pairs.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::size_t tab = lines[i].find('\t');
    if (tab == std::string::npos) {
      std::ostringstream os;
      os << path << ":" << (i + 1) << ": expected one TAB separator";
      throw DataError(os.str());
    }
    corpus.pairs.push_back(SentencePair{lines[i].substr(0, tab),
                                        lines[i].substr(tab + 1), src_lang,
                                        tgt_lang, Origin::Authentic, i + 1});
  }
  return corpus;
}

namespace {

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ValidationError("config key '" + key + "' expects a boolean, got '" +
                        value + "'");
}

std::vector<std::string> split_csv(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ParsedConfig parse_filter_config(const std::vector<std::string>& lines) {
  ParsedConfig parsed;
  parsed.cfg = FilterConfig::defaults();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    if (std::size_t hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    // trim
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t");
    line = line.substr(b, e - b + 1);
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(i + 1) +
                            ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto numeric = [&](auto parse) {
      try {
        return parse(value);
      } catch (const std::exception&) {
        throw ValidationError("config line " + std::to_string(i + 1) +
                              ": bad numeric value '" + value + "' for key '" +
                              key + "'");
      }
    };
    if (key == "filters") {
      parsed.cfg.filters = split_csv(value);
    } else if (key == "max_tokens") {
      parsed.cfg.max_tokens =
          numeric([](const std::string& v) { return std::stoul(v); });
    } else if (key == "max_len_ratio") {
      parsed.cfg.max_len_ratio =
          numeric([](const std::string& v) { return std::stod(v); });
    } else if (key == "punct_ratio_threshold") {
      parsed.cfg.punct_ratio_threshold =
          numeric([](const std::string& v) { return std::stod(v); });
    } else if (key == "lang_id_enabled") {
      parsed.cfg.lang_id_enabled = parse_bool(value, key);
    } else if (key == "skip_punct_norm") {
      parsed.cfg.skip_punct_norm = parse_bool(value, key);
    } else if (key == "langs") {
      parsed.cfg.langs = split_csv(value);
    } else if (key == "lang_seed_dir") {
      parsed.lang_seed_dir = value;
    } else {
      throw ValidationError("config line " + std::to_string(i + 1) +
                            ": unknown key '" + key + "'");
    }
  }
  parsed.cfg.validate();
  return parsed;
}

ParsedConfig load_filter_config(const std::string& path) {
  return parse_filter_config(io::read_lines(path));
}

}  // namespace livkit::corpus
