// Copyright 2026 The SimCleaner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simcleaner/corpus.hpp"

#include <unicode/uchar.h>
#include <unicode/locid.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "simcleaner/table_io.hpp"
#include "simcleaner/unicode.hpp"

namespace simcleaner {
namespace {

// mt19937_64 output is fixed by the standard; the distributions are not, so
// draws are derived from raw engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

const std::vector<std::string> kStreets = {
    "Almirante Barroso, Avenida", "Bernardo Sayão, Avenida",
    "Governador José Malcher, Avenida", "Nazaré, Avenida",
    "Presidente Vargas, Avenida", "Magalhães Barata, Avenida",
    "Duque de Caxias, Avenida", "Rômulo Maiorana, Avenida",
    "Pedro Miranda, Travessa", "Senador Lemos, Avenida",
    "Visconde de Souza Franco, Avenida", "Conselheiro Furtado, Avenida",
    "Gentil Bittencourt, Avenida", "Boaventura da Silva, Rua",
    "Mundurucus, Rua", "Tamoios, Rua", "Pariquis, Rua", "Caripunas, Rua",
    "Timbiras, Avenida", "Antônio Barreto, Rua", "Domingos Marreiros, Rua",
    "Diogo Móia, Rua", "Oliveira Belo, Rua", "Jerônimo Pimentel, Travessa",
    "Quintino Bocaiúva, Travessa", "Rui Barbosa, Travessa",
    "Benjamin Constant, Travessa", "Doutor Moraes, Travessa",
    "Padre Eutíquio, Travessa", "Frei Gil de Vila Nova, Travessa",
    "Tupinambás, Travessa", "Marquês de Herval, Avenida",
    "Pedro Álvares Cabral, Avenida", "Júlio César, Avenida",
    "Augusto Montenegro, Rodovia", "Mário Covas, Rodovia",
    "Arthur Bernardes, Avenida", "Senador Manoel Barata, Rua",
    "Manoel Evaristo, Passagem", "Castelo Branco, Avenida",
    "Tavares Bastos, Travessa", "Lomas Valentinas, Travessa",
    "Humaitá, Travessa", "Curuzu, Avenida", "Chaco, Travessa",
    "Alferes Costa, Travessa", "Mauriti, Travessa",
    "Dom Romualdo de Seixas, Travessa", "Gama Abreu, Rua",
    "Serzedelo Corrêa, Avenida", "Cônego Jerônimo Pimentel, Rua",
    "Tiradentes, Rua", "Aristides Lobo, Rua", "Ó de Almeida, Rua",
    "Manoel Barata, Rua", "Santo Antônio, Rua", "João Alfredo, Rua",
    "Quinze de Novembro, Avenida", "Boulevard Castilhos França, Avenida",
    "Portugal, Avenida", "Siqueira Mendes, Rua", "Dr. Assis, Rua",
    "Feliz Lusitânia, Praça", "Batista Campos, Praça", "República, Praça",
    "Brasil, Praça", "Eneas Pinheiro, Travessa", "Perebebuí, Travessa",
    "Vileta, Travessa", "Barão do Triunfo, Travessa", "Estrela, Travessa",
    "Lago Azul, Passagem", "Alcindo Cacela, Avenida", "Fernando Guilhon, Rua",
    "Jabatiteua, Travessa", "Bom Jardim, Passagem", "Pirajá, Avenida",
    "Independência, Avenida", "Primeiro de Dezembro, Avenida",
    "Centenário, Avenida", "Dalva, Rua", "Yamada, Passagem",
    "Cipriano Santos, Rua", "Silva Castro, Rua", "Lauro Sodré, Rua",
    "Veiga Cabral, Rua", "Carlos de Carvalho, Travessa",
    "Osvaldo Cruz, Avenida", "Hélio Gueiros, Rua", "Coronel Luís Bentes, Rua",
    "Caldeira Castelo Branco, Travessa", "Moura Carvalho, Travessa",
    "Ferreira Pena, Rua", "Arcipreste Manoel Teodoro, Rua",
    "Bandeira Brasileira, Passagem", "Lopo de Castro, Passagem",
    "Nova Marambaia, Conjunto", "Tenoné, Estrada", "Icoaraci, Rodovia",
    "Outeiro, Estrada", "Mosqueiro, Rodovia", "Sacramenta, Passagem",
    "Marco, Passagem", "Guamá, Rua", "Terra Firme, Passagem", "Jurunas, Rua",
    "Pedreira, Rua", "Telégrafo, Passagem", "Umarizal, Rua",
    "Cremação, Travessa", "Souza, Rua", "Canudos, Rua", "Montese, Passagem",
    "Marambaia, Passagem", "Cabanagem, Rua", "Tapanã, Estrada",
    "Parque Verde, Conjunto", "Val-de-Cães, Rodovia", "Coqueiro, Avenida",
    "Bengui, Rua", "Curió-Utinga, Estrada",
};

enum class Perturbation { kCase, kSpaceRemoval, kSpaceInsertion, kTypo, kSuffix };

std::string upper(const std::string& s) {
  std::string out;
  icu::UnicodeString::fromUTF8(s).toUpper(icu::Locale::getRoot()).toUTF8String(out);
  return out;
}

std::string lower(const std::string& s) {
  std::string out;
  icu::UnicodeString::fromUTF8(s).toLower(icu::Locale::getRoot()).toUTF8String(out);
  return out;
}

std::string case_noise(const std::string& value, Rng& rng) {
  switch (rng.below(3)) {
    case 0: return upper(value);
    case 1: return lower(value);
    default: break;
  }
  // Upper-case one word, as in "Bernardo SAYÃO, AV.".
  std::vector<std::pair<std::size_t, std::size_t>> words;
  std::size_t start = std::string::npos;
  for (std::size_t i = 0; i <= value.size(); ++i) {
    const bool boundary = i == value.size() || value[i] == ' ' || value[i] == ',';
    if (!boundary && start == std::string::npos) start = i;
    if (boundary && start != std::string::npos) {
      words.emplace_back(start, i - start);
      start = std::string::npos;
    }
  }
  if (words.empty()) return upper(value);
  auto [pos, len] = words[rng.below(words.size())];
  return value.substr(0, pos) + upper(value.substr(pos, len)) + value.substr(pos + len);
}

std::string remove_space(const std::string& value, Rng& rng) {
  std::vector<std::size_t> spaces;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (value[i] == ' ') spaces.push_back(i);
  }
  if (spaces.empty()) return value;
  std::string out = value;
  out.erase(spaces[rng.below(spaces.size())], 1);
  return out;
}

std::vector<std::size_t> letter_positions(const std::u32string& cps) {
  std::vector<std::size_t> letters;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (u_isalpha(static_cast<UChar32>(cps[i]))) letters.push_back(i);
  }
  return letters;
}

std::string insert_space(const std::string& value, Rng& rng) {
  std::u32string cps = unicode::to_code_points(value);
  if (rng.chance(0.5)) {
    std::vector<std::size_t> spaces;
    for (std::size_t i = 0; i < cps.size(); ++i) {
      if (cps[i] == U' ') spaces.push_back(i);
    }
    if (!spaces.empty()) {
      cps.insert(cps.begin() + static_cast<std::ptrdiff_t>(spaces[rng.below(spaces.size())]), U' ');
      return unicode::to_utf8(cps);
    }
  }
  std::vector<std::size_t> inner;
  for (std::size_t i = 1; i < cps.size(); ++i) {
    if (u_isalpha(static_cast<UChar32>(cps[i - 1])) && u_isalpha(static_cast<UChar32>(cps[i]))) {
      inner.push_back(i);
    }
  }
  if (inner.empty()) return value;
  cps.insert(cps.begin() + static_cast<std::ptrdiff_t>(inner[rng.below(inner.size())]), U' ');
  return unicode::to_utf8(cps);
}

std::string typo(const std::string& value, Rng& rng) {
  static constexpr std::u32string_view kLetters = U"abcdefghijklmnopqrstuvwxyz";
  std::u32string cps = unicode::to_code_points(value);
  const std::vector<std::size_t> letters = letter_positions(cps);
  if (letters.empty()) return value;
  const std::size_t at = letters[rng.below(letters.size())];
  const bool is_upper = u_isupper(static_cast<UChar32>(cps[at]));
  char32_t replacement = kLetters[rng.below(kLetters.size())];
  if (is_upper) replacement = static_cast<char32_t>(u_toupper(static_cast<UChar32>(replacement)));

  switch (rng.below(4)) {
    case 0:
      cps[at] = replacement;
      break;
    case 1:
      cps.erase(at, 1);
      break;
    case 2:
      cps.insert(cps.begin() + static_cast<std::ptrdiff_t>(at), replacement);
      break;
    default:
      if (at + 1 < cps.size() && u_isalpha(static_cast<UChar32>(cps[at + 1]))) {
        std::swap(cps[at], cps[at + 1]);
      } else {
        cps[at] = replacement;
      }
      break;
  }
  return unicode::to_utf8(cps);
}

std::string suffix(const std::string& value, Rng& rng) {
  const std::size_t a = 100 + rng.below(3000);
  const std::size_t b = a + 500 + rng.below(2000);
  return value + " - de " + std::to_string(a) + "/" + std::to_string(a + 1) + " a " +
         std::to_string(b) + "/" + std::to_string(b + 1);
}

std::string outlier(Rng& rng) {
  static constexpr std::string_view kJunk = "#X*-?0";
  const char c = kJunk[rng.below(kJunk.size())];
  std::string out(5 + rng.below(4), c);
  if (rng.chance(0.5)) out += '.';
  return out;
}

std::string synthetic_name(Rng& rng) {
  static constexpr std::string_view kConsonants = "bcdfgjlmnprstv";
  static constexpr std::string_view kVowels = "aeiou";
  static const std::vector<std::string> kTypes = {
      "Rua", "Travessa", "Avenida", "Passagem", "Alameda", "Estrada", "Vila", "Conjunto"};
  std::string name;
  const std::size_t words = 1 + rng.below(2);
  for (std::size_t w = 0; w < words; ++w) {
    if (w > 0) name += ' ';
    const std::size_t syllables = 2 + rng.below(3);
    for (std::size_t s = 0; s < syllables; ++s) {
      char consonant = kConsonants[rng.below(kConsonants.size())];
      if (s == 0) consonant = static_cast<char>(consonant - 'a' + 'A');
      name += consonant;
      name += kVowels[rng.below(kVowels.size())];
    }
  }
  return name + ", " + kTypes[rng.below(kTypes.size())];
}

std::string perturb(const std::string& value, Perturbation kind, Rng& rng) {
  switch (kind) {
    case Perturbation::kCase: return case_noise(value, rng);
    case Perturbation::kSpaceRemoval: return remove_space(value, rng);
    case Perturbation::kSpaceInsertion: return insert_space(value, rng);
    case Perturbation::kTypo: return typo(value, rng);
    case Perturbation::kSuffix: return suffix(value, rng);
  }
  return value;
}

}  // namespace

DefectProfile DefectProfile::clean() { return {}; }

DefectProfile DefectProfile::standard() {
  DefectProfile p;
  p.defect_rate = 0.3;
  p.case_noise = true;
  p.space_removal = true;
  p.typos = true;
  return p;
}

DefectProfile DefectProfile::full() {
  DefectProfile p = standard();
  p.space_insertion = true;
  p.suffix_noise = true;
  p.outlier_fraction = 0.02;
  return p;
}

std::string_view row_kind_name(RowKind kind) {
  switch (kind) {
    case RowKind::kClean: return "clean";
    case RowKind::kVariant: return "variant";
    case RowKind::kOutlier: return "outlier";
  }
  return "clean";
}

const std::vector<std::string>& street_lexicon() { return kStreets; }

std::vector<std::string> make_lexicon(std::size_t size, std::uint64_t seed) {
  std::vector<std::string> lexicon(kStreets.begin(),
                                   kStreets.begin() + static_cast<std::ptrdiff_t>(
                                                          std::min(size, kStreets.size())));
  std::unordered_set<std::string> seen(lexicon.begin(), lexicon.end());
  Rng rng(seed ^ 0x5eedf00dULL);
  while (lexicon.size() < size) {
    std::string name = synthetic_name(rng);
    if (seen.insert(name).second) lexicon.push_back(std::move(name));
  }
  return lexicon;
}

std::vector<CorpusRow> generate_corpus(const CorpusOptions& options) {
  Rng rng(options.seed);
  const std::vector<std::string> lexicon =
      options.lexicon_size == 0 ? kStreets : make_lexicon(options.lexicon_size, options.seed);
  const DefectProfile& profile = options.profile;

  std::vector<Perturbation> kinds;
  if (profile.case_noise) kinds.push_back(Perturbation::kCase);
  if (profile.space_removal) kinds.push_back(Perturbation::kSpaceRemoval);
  if (profile.space_insertion) kinds.push_back(Perturbation::kSpaceInsertion);
  if (profile.typos) kinds.push_back(Perturbation::kTypo);
  if (profile.suffix_noise) kinds.push_back(Perturbation::kSuffix);

  const std::size_t n = options.rows;
  const auto outlier_count = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::llround(profile.outlier_fraction * static_cast<double>(n))));
  std::vector<char> is_outlier(n, 0);
  {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < outlier_count; ++i) {
      std::swap(order[i], order[i + rng.below(n - i)]);
      is_outlier[order[i]] = 1;
    }
  }

  std::vector<CorpusRow> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    CorpusRow row;
    row.id = i + 1;
    if (is_outlier[i]) {
      row.value = outlier(rng);
      row.kind = RowKind::kOutlier;
      rows.push_back(std::move(row));
      continue;
    }
    row.canonical = lexicon[rng.below(lexicon.size())];
    row.value = row.canonical;
    if (!kinds.empty() && rng.chance(profile.defect_rate)) {
      const Perturbation kind = kinds[rng.below(kinds.size())];
      for (int attempt = 0; attempt < 8; ++attempt) {
        std::string candidate = perturb(row.canonical, kind, rng);
        if (candidate != row.canonical && unicode::longest_run(candidate) < 4) {
          row.value = std::move(candidate);
          row.kind = RowKind::kVariant;
          break;
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_corpus(const std::vector<CorpusRow>& rows, const std::filesystem::path& table,
                  const std::filesystem::path& truth) {
  DelimitedWriter table_out(table, 2);
  DelimitedWriter truth_out(truth, 3);
  table_out.write(std::vector<std::string>{"id", std::string(kCorpusValueColumn)});
  truth_out.write(std::vector<std::string>{"id", "canonical", "kind"});
  for (const auto& row : rows) {
    const std::string id = std::to_string(row.id);
    table_out.write(std::vector<std::string>{id, row.value});
    truth_out.write(std::vector<std::string>{id, row.canonical, std::string(row_kind_name(row.kind))});
  }
  table_out.close();
  truth_out.close();
}

}  // namespace simcleaner
