#include "diachron/normalize.hpp"

#include <fstream>

#include "diachron/error.hpp"

namespace diachron {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

void TokenStream::append(std::string_view text, std::int64_t line_id) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto space = text.find(' ', pos);
    const auto end = space == std::string_view::npos ? text.size() : space;
    if (end > pos) {
      tokens.emplace_back(text.substr(pos, end - pos));
      line_ids.push_back(line_id);
    }
    pos = end + 1;
  }
}

TokenStream tokenize(std::string_view text) {
  TokenStream ts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto space = text.find(' ', pos);
    const auto end = space == std::string_view::npos ? text.size() : space;
    if (end > pos) ts.tokens.emplace_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return ts;
}

TokenStream filter_stopwords(const TokenStream& ts, const StopList& stop) {
  TokenStream out;
  out.tokens.reserve(ts.tokens.size());
  for (std::size_t i = 0; i < ts.tokens.size(); ++i) {
    if (stop.contains(ts.tokens[i])) continue;
    out.tokens.push_back(ts.tokens[i]);
    if (ts.has_provenance()) out.line_ids.push_back(ts.line_ids[i]);
  }
  return out;
}

std::vector<std::string> read_word_list(std::istream& in, std::string_view source) {
  std::vector<std::string> words;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    if (view.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError(std::string(source), line_number, "expected one word per line");
    }
    words.emplace_back(view);
  }
  return words;
}

std::vector<std::string> read_word_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  return read_word_list(in, path.string());
}

StopList::StopList(std::unordered_set<std::string> words) : words_(std::move(words)) {}

StopList StopList::parse(std::istream& in, std::string_view source) {
  std::unordered_set<std::string> words;
  for (std::string& w : read_word_list(in, source)) {
    for (char& c : w) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    }
    words.insert(std::move(w));
  }
  return StopList(std::move(words));
}

StopList StopList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  return parse(in, path.string());
}

}  // namespace diachron
