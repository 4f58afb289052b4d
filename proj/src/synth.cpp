#include "etdq/synth.hpp"

#include "etdq/departments.hpp"
#include "etdq/errors.hpp"
#include "etdq/records_io.hpp"
#include "etdq/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace etdq::synth {

namespace {

using Words = std::vector<std::string>;

const Words kGiven = {
    "James",   "Mary",     "Robert",  "Patricia", "John",     "Jennifer", "Michael", "Linda",    "David",
    "Elizabeth", "William", "Barbara", "Richard", "Susan",    "Joseph",   "Jessica", "Thomas",   "Sarah",
    "Charles", "Karen",    "Christopher", "Lisa", "Daniel",   "Nancy",    "Matthew", "Betty",    "Anthony",
    "Margaret", "Mark",    "Sandra",  "Donald",   "Ashley",   "Steven",   "Kimberly", "Paul",    "Emily",
    "Andrew",  "Donna",    "Joshua",  "Michelle", "Kenneth",  "Carol",    "Kevin",   "Amanda",   "Brian",
    "Melissa", "George",   "Deborah", "Timothy",  "Stephanie", "Ronald",  "Rebecca", "Edward",   "Sharon",
    "Jason",   "Laura",    "Jeffrey", "Cynthia",  "Ryan",     "Kathleen", "Jacob",   "Amy",      "Gary",
    "Angela",  "Nicholas", "Shirley", "Eric",     "Anna",     "Jonathan", "Brenda",  "Stephen",  "Pamela",
    "Larry",   "Emma",     "Justin",  "Nicole",   "Scott",    "Helen",    "Brandon", "Samantha", "Benjamin",
    "Katherine", "Samuel", "Christine", "Gregory", "Debra",   "Alexander", "Rachel", "Frank",    "Carolyn",
    "Patrick", "Janet",    "Raymond", "Catherine", "Jack",    "Maria",    "Dennis",  "Heather",  "Jerry",
    "Diane",   "Tyler",    "Ruth",    "Aaron",    "Julie",    "Jose",     "Olivia",  "Adam",     "Joyce",
    "Nathan",  "Virginia", "Henry",   "Victoria", "Douglas",  "Kelly",    "Zachary", "Lauren",   "Peter",
    "Christina", "Kyle",   "Joan",    "Ethan",    "Evelyn",   "Walter",   "Judith",  "Noah",     "Megan",
    "Jeremy",  "Andrea",   "Christian", "Cheryl", "Keith",    "Hannah",   "Roger",   "Jacqueline", "Terry",
    "Martha",  "Gerald",   "Gloria",  "Harold",   "Teresa",   "Sean",     "Ann",     "Austin",   "Sara",
    "Carl",    "Madison",  "Arthur",  "Frances",  "Lawrence", "Kathryn",  "Dylan",   "Janice",   "Jesse",
    "Jean",    "Jordan",   "Abigail", "Bryan",    "Alice",    "Billy",    "Judy",    "Bruce",    "Sophia",
    "Gabriel", "Grace",    "Joe",     "Denise",   "Logan",    "Amber",    "Alan",    "Doris",    "Juan",
    "Marilyn", "Wei",      "Priya",   "Hiroshi",  "Fatima",   "Olga",     "Rahul",   "Mei",      "Ahmed",
    "Sung",    "Ananya",   "Chen",    "Yuki",     "Omar",     "Ingrid",   "Tomasz",  "Lucia",    "Kwame",
    "Aisha",   "Mateo",    "Sofia",   "Arjun",    "Leila",    "Dmitri",   "Nadia"};

const Words kFamily = {
    "Smith",    "Johnson",  "Williams", "Brown",     "Jones",    "Garcia",    "Miller",   "Davis",
    "Rodriguez", "Martinez", "Hernandez", "Lopez",   "Gonzalez", "Wilson",    "Anderson", "Thomas",
    "Taylor",   "Moore",    "Jackson",  "Martin",    "Lee",      "Perez",     "Thompson", "White",
    "Harris",   "Sanchez",  "Clark",    "Ramirez",   "Lewis",    "Robinson",  "Walker",   "Young",
    "Allen",    "King",     "Wright",   "Scott",     "Torres",   "Nguyen",    "Hill",     "Flores",
    "Green",    "Adams",    "Nelson",   "Baker",     "Hall",     "Rivera",    "Campbell", "Mitchell",
    "Carter",   "Roberts",  "Gomez",    "Phillips",  "Evans",    "Turner",    "Diaz",     "Parker",
    "Cruz",     "Edwards",  "Collins",  "Reyes",     "Stewart",  "Morris",    "Morales",  "Murphy",
    "Cook",     "Rogers",   "Gutierrez", "Ortiz",    "Morgan",   "Cooper",    "Peterson", "Bailey",
    "Reed",     "Kelly",    "Howard",   "Ramos",     "Kim",      "Cox",       "Ward",     "Richardson",
    "Watson",   "Brooks",   "Chavez",   "Wood",      "James",    "Bennett",   "Gray",     "Mendoza",
    "Ruiz",     "Hughes",   "Price",    "Alvarez",   "Castillo", "Sanders",   "Patel",    "Myers",
    "Long",     "Ross",     "Foster",   "Jimenez",   "Powell",   "Jenkins",   "Perry",    "Russell",
    "Sullivan", "Bell",     "Coleman",  "Butler",    "Henderson", "Barnes",   "Gonzales", "Fisher",
    "Vasquez",  "Simmons",  "Romero",   "Jordan",    "Patterson", "Alexander", "Hamilton", "Graham",
    "Reynolds", "Griffin",  "Wallace",  "Moreno",    "West",     "Cole",      "Hayes",    "Bryant",
    "Herrera",  "Gibson",   "Ellis",    "Tran",      "Medina",   "Aguilar",   "Stevens",  "Murray",
    "Ford",     "Castro",   "Marshall", "Owens",     "Harrison", "Fernandez", "McDonald", "Woods",
    "Washington", "Kennedy", "Wells",   "Vargas",    "Henry",    "Chen",      "Freeman",  "Webb",
    "Tucker",   "Guzman",   "Burns",    "Crawford",  "Olson",    "Simpson",   "Porter",   "Hunter",
    "Gordon",   "Mendez",   "Silva",    "Shaw",      "Snyder",   "Mason",     "Dixon",    "Munoz",
    "Hunt",     "Hicks",    "Holmes",   "Palmer",    "Wagner",   "Black",     "Robertson", "Boyd",
    "Rose",     "Stone",    "Salazar",  "Fox",       "Warren",   "Mills",     "Meyer",    "Rice",
    "Schmidt",  "Garza",    "Daniels",  "Ferguson",  "Nichols",  "Stephens",  "Soto",     "Weaver",
    "Ryan",     "Gardner",  "Payne",    "Grant",     "Dunn",     "Kowalski",  "Nakamura", "Okafor",
    "Singh",    "Zhang",    "Wang",     "Liu",       "Yamamoto", "Ivanova",   "Haddad",   "Novak",
    "Lindqvist", "O'Brien", "Van Dyke", "De Luca",   "Park",     "Choi",      "Sato",     "Mensah"};

const Words kTopicNoun = {
    "Gene Expression",      "Protein Folding",       "Neural Networks",       "Climate Variability",
    "Soil Microbiomes",      "Urban Heat Islands",    "Graph Algorithms",      "Wireless Sensor Networks",
    "Photovoltaic Materials", "Groundwater Recharge", "Sediment Transport",   "Thin Film Growth",
    "Carbon Nanotubes",     "Immune Response",       "Cardiac Function",      "Language Acquisition",
    "Reading Comprehension", "Teacher Identity",     "Public Policy",         "Labor Markets",
    "Monetary Policy",      "Consumer Behavior",     "Supply Chains",         "Social Networks",
    "Political Participation", "Religious Communities", "Medieval Literature", "Colonial Archives",
    "Jazz Improvisation",   "Choral Performance",    "Piano Pedagogy",        "Contemporary Dance",
    "Landscape Architecture", "Affordable Housing",  "Water Quality",         "Forest Ecology",
    "Coral Reefs",          "Bird Migration",        "Insect Pollinators",    "Plant Pathogens",
    "Cancer Metabolism",    "Drug Delivery",         "Stem Cells",            "Antibiotic Resistance",
    "Machine Learning",     "Computer Vision",       "Natural Language Processing", "Software Testing",
    "Distributed Systems",  "Cryptographic Protocols", "Robotic Manipulation", "Autonomous Vehicles",
    "Power Systems",        "Battery Degradation",   "Fluid Dynamics",        "Turbulent Flows",
    "Composite Structures", "Bridge Monitoring",     "Traffic Safety",        "Concrete Durability",
    "Quantum Dots",         "Dark Matter",           "Galaxy Formation",      "Exoplanet Atmospheres",
    "Seismic Hazards",      "Volcanic Activity",     "Ocean Acidification",   "Sea Level Rise",
    "Adolescent Depression", "Childhood Obesity",    "Maternal Health",       "Health Disparities",
    "Nursing Practice",     "Patient Safety",        "Sports Performance",    "Motor Learning",
    "Moral Reasoning",      "Personal Identity",     "Free Will",             "Aesthetic Experience",
    "Second Language Writing", "Bilingual Education", "Early Childhood Education", "Higher Education",
    "Student Engagement",   "Online Learning",       "Financial Literacy",    "Corporate Governance",
    "Tax Compliance",       "International Trade",   "Foreign Aid",           "Refugee Resettlement",
    "Electoral Systems",    "Judicial Review",       "Human Rights",          "Environmental Justice",
    "Food Security",        "Crop Yields",           "Dairy Cattle",          "Poultry Nutrition",
    "Metal Organic Frameworks", "Polymer Membranes", "Catalytic Oxidation",   "Organic Synthesis",
    "Enzyme Kinetics",      "Membrane Transport",    "Synaptic Plasticity",   "Memory Consolidation",
    "Visual Attention",     "Decision Making",       "Risk Perception",       "Organizational Change"};

const Words kAdjective = {"Novel",       "Adaptive",     "Robust",     "Comparative", "Longitudinal", "Integrated",
                          "Spatial",     "Temporal",     "Efficient",  "Scalable",    "Sustainable",  "Critical",
                          "Historical",  "Experimental", "Computational", "Qualitative", "Quantitative", "Multiscale",
                          "Rural",       "Urban",        "Regional",   "Global",      "Early",        "Emerging",
                          "Nonlinear",   "Stochastic",   "Bayesian",   "Cultural",    "Economic",     "Clinical"};

const Words kContext = {"the United States",  "Rural Appalachia",  "Sub-Saharan Africa", "Southeast Asia",
                        "the Great Lakes Region", "Latin America",  "Coastal Louisiana",  "the Arctic",
                        "Public Schools",     "Community Colleges", "Small Businesses",  "Hospital Settings",
                        "Older Adults",       "First-Generation College Students", "Veterans", "Young Children",
                        "Nineteenth-Century Britain", "Postwar Japan", "Contemporary China", "Early Modern Europe",
                        "Low-Income Households", "Developing Economies", "Mountain Watersheds", "Arid Environments"};

const Words kMethod = {"Deep Learning",     "Finite Element Analysis", "Mixed Methods",     "Case Studies",
                       "Field Experiments", "Survey Data",             "Remote Sensing",    "Agent-Based Modeling",
                       "Molecular Dynamics", "Bayesian Inference",     "Discourse Analysis", "Archival Research",
                       "Randomized Trials", "Numerical Simulation",    "Network Analysis",  "Ethnography"};

std::string lower_first(const std::string& s) {
  auto c = text::to_u32(s);
  if (!c.empty()) c[0] = text::to_u32(text::to_lower(text::to_utf8(c.substr(0, 1))))[0];
  return text::to_utf8(c);
}

}  // namespace

std::string person_name(Rng& rng, bool middle_initial) {
  std::string name = rng.pick(kGiven);
  if (middle_initial) {
    name += ' ';
    name += static_cast<char>('A' + rng.index(26));
    name += '.';
  }
  name += ' ';
  name += rng.pick(kFamily);
  return name;
}

std::string dissertation_title(Rng& rng) {
  const auto& a = rng.pick(kTopicNoun);
  const auto& b = rng.pick(kTopicNoun);
  const auto& adj = rng.pick(kAdjective);
  const auto& ctx = rng.pick(kContext);
  const auto& method = rng.pick(kMethod);
  switch (rng.index(14)) {
    case 0: return "The Role of " + a + " in " + b;
    case 1: return "Effects of " + a + " on " + b + " in " + ctx;
    case 2: return adj + " Approaches to " + a + ": Evidence from " + ctx;
    case 3: return "Essays on " + a + " and " + b;
    case 4: return "Investigating " + a + " Using " + method;
    case 5: return "A " + adj + " Study of " + a + " among " + ctx;
    case 6: return "Toward " + adj + " Models of " + a + " for " + b;
    case 7: return a + " and " + b + ": A " + adj + " Analysis";
    case 8: return "Understanding the Relationship between " + a + " and " + b;
    case 9: return "Characterization of " + a + " with " + method;
    case 10: return adj + " " + a + " in " + ctx + ", 1950-2010";
    case 11: return "Mechanisms of " + a + " Underlying " + b;
    case 12: return "Exploring " + lower_first(a) + " in " + ctx + " through " + method;
    default: return "Design and Evaluation of " + adj + " " + a + " for " + b;
  }
}

std::string junk_title(Rng& rng) {
  static const Words fragments = {"Untitled",    "Thesis",     "Dissertation", "Abstract", "Final",  "Draft",
                                  "Introduction", "Appendix",  "Document",     "Copy",     "Title",  "TBD",
                                  "Chapter",     "Report",     "Submission",   "Approved", "Signature"};
  static const Words codes = {"DMA Recitals",   "MFA Exhibition", "ETD",          "THESIS DRAFT", "Signature Page",
                              "Chapter 3",      "Recital Program", "PhD ETD",     "FINAL COPY",   "Table of Contents",
                              "Committee Page", "Copyright Page",  "Approval Sheet", "MS Project", "Vita"};
  static const std::string punct = ".,;:!?-_*#/\\()[]{}'\"&%@";
  switch (rng.index(8)) {
    case 0: {  // punctuation only
      std::string s;
      const auto n = 1 + rng.index(12);
      for (std::size_t i = 0; i < n; ++i) s += punct[rng.index(punct.size())];
      return s;
    }
    case 1:  // one-token fragment
      return rng.index(2) ? rng.pick(fragments) : text::to_upper(rng.pick(fragments));
    case 2:  // short code
      return rng.pick(codes);
    case 3: {  // file name
      static const Words stems = {"thesis", "dissertation", "etd", "final", "manuscript", "draft"};
      static const Words ext = {".pdf", ".docx", ".doc", ".tex"};
      return rng.pick(stems) + (rng.index(2) ? "_" : "-") + std::to_string(1990 + rng.index(34)) +
             (rng.index(2) ? "_v" + std::to_string(1 + rng.index(9)) : "") + rng.pick(ext);
    }
    case 4: {  // identifier
      char buf[48];
      std::snprintf(buf, sizeof buf, "%s-%04zu-%03zu", rng.index(2) ? "ETD" : "etd", 1990 + rng.index(34),
                    rng.index(1000));
      return buf;
    }
    case 5: {  // keyboard noise
      std::string s;
      const auto words = 1 + rng.index(3);
      for (std::size_t w = 0; w < words; ++w) {
        if (w) s += ' ';
        const auto len = 2 + rng.index(6);
        for (std::size_t i = 0; i < len; ++i) {
          s += rng.index(4) == 0 ? static_cast<char>('0' + rng.index(10)) : static_cast<char>('a' + rng.index(26));
        }
      }
      return s;
    }
    case 6: {  // truncated title with a punctuation run
      auto t = rng.pick(kTopicNoun);
      const auto n = 2 + rng.index(5);
      t += ' ';
      for (std::size_t i = 0; i < n; ++i) t += punct[rng.index(6)];
      return t;
    }
    default: {  // date or number
      char buf[32];
      if (rng.index(2)) {
        std::snprintf(buf, sizeof buf, "%02zu/%02zu/%04zu", 1 + rng.index(12), 1 + rng.index(28), 1990 + rng.index(34));
      } else {
        std::snprintf(buf, sizeof buf, "%zu", rng.index(1000000));
      }
      return buf;
    }
  }
}

std::vector<TitleExample> title_corpus(std::uint64_t seed, std::size_t valid, std::size_t junk) {
  Rng rng(seed);
  std::vector<TitleExample> out;
  out.reserve(valid + junk);
  for (std::size_t i = 0; i < valid; ++i) out.push_back({dissertation_title(rng), TitleLabel::Valid});
  for (std::size_t i = 0; i < junk; ++i) out.push_back({junk_title(rng), TitleLabel::Invalid});
  return out;
}

std::pair<std::vector<TitleExample>, std::vector<TitleExample>> split_corpus(std::vector<TitleExample> corpus,
                                                                             double holdout, std::uint64_t seed) {
  Rng rng(seed);
  rng.shuffle(corpus);
  const auto n_hold = static_cast<std::size_t>(static_cast<double>(corpus.size()) * holdout);
  std::vector<TitleExample> held(corpus.end() - static_cast<std::ptrdiff_t>(n_hold), corpus.end());
  corpus.resize(corpus.size() - n_hold);
  return {std::move(corpus), std::move(held)};
}

std::string format_title_corpus(const std::vector<TitleExample>& corpus) {
  std::string out;
  for (const auto& e : corpus) {
    out += e.label == TitleLabel::Valid ? "valid\t" : "invalid\t";
    out += e.title;
    out.push_back('\n');
  }
  return out;
}

std::vector<TitleExample> parse_title_corpus(std::string_view tsv) {
  std::vector<TitleExample> out;
  std::size_t line_no = 0;
  while (!tsv.empty()) {
    const auto nl = tsv.find('\n');
    auto line = tsv.substr(0, nl);
    tsv = nl == std::string_view::npos ? std::string_view{} : tsv.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    const auto label = line.substr(0, tab);
    if (tab == std::string_view::npos || (label != "valid" && label != "invalid")) {
      throw ParseError("title corpus line " + std::to_string(line_no) + ": expected valid|invalid<TAB>title");
    }
    out.push_back({std::string(line.substr(tab + 1)), label == "valid" ? TitleLabel::Valid : TitleLabel::Invalid});
  }
  return out;
}

namespace {
std::vector<LabeledFeatures> featurize(const std::vector<TitleExample>& examples, const IdfTable& idf) {
  std::vector<LabeledFeatures> out;
  out.reserve(examples.size());
  for (const auto& e : examples) out.push_back({extract_title_features(e.title, idf), e.label});
  return out;
}
}  // namespace

TitleFit fit_titles(const std::vector<TitleExample>& train, const TrainOptions& options) {
  std::vector<std::string> titles;
  titles.reserve(train.size());
  for (const auto& e : train) titles.push_back(e.title);
  TitleFit fit;
  fit.idf = IdfTable::from_corpus(titles);
  const auto x = featurize(train, fit.idf);
  fit.model = train_title_classifier(x, options);
  return fit;
}

BinaryScore score_titles(const std::vector<TitleExample>& examples, const TitleFit& fit) {
  const auto x = featurize(examples, fit.idf);
  return etdq::score_titles(x, fit.model);
}

// ---- benchmark ----

std::array<std::size_t, kFieldCount> BenchmarkSpec::expected_canonical() const {
  std::array<std::size_t, kFieldCount> c{};
  c[index_of(FieldKey::Advisor)] = advisor_roles;
  c[index_of(FieldKey::University)] = university_aliases;
  c[index_of(FieldKey::Year)] = year_non_iso;
  c[index_of(FieldKey::Degree)] = degree_aliases + degree_oracle_aliases + degree_incorrect;
  c[index_of(FieldKey::Department)] = department_variants + department_oracle_variants + department_misspelled;
  return c;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error("benchmark builder: " + what);
}

const Words kRoles = {"Chair", "Co-Chair", "Committee Member", "Advisor", "Co-Advisor", "Director"};

const Words kDegreePool = {"Doctor of Philosophy",   "Master of Science",        "Master of Arts",
                           "Doctor of Education",    "Master of Fine Arts",      "Doctor of Musical Arts",
                           "Master of Engineering",  "Master of Philosophy",     "Master of Public Health",
                           "Doctor of Nursing Practice", "Master of Music",      "Master of Social Work",
                           "Master of Education",    "Doctor of Public Health",  "Master of Architecture",
                           "Doctor of Psychology",   "Master of Business Administration",
                           "Master of Public Administration"};

// weights favour the doctorate, as in real ETD collections
std::string pick_degree(Rng& rng) {
  if (rng.uniform() < 0.55) return kDegreePool[0];
  return kDegreePool[1 + rng.index(kDegreePool.size() - 1)];
}

const Words kWrongDegree = {"history", "Fall 2015", "Thesis", "Graduate School"};

// Surface forms the missing-value policy would read as absent ("NA") are unusable.
std::vector<std::string> without_sentinels(std::vector<std::string> forms, const MissingPolicy& missing) {
  std::erase_if(forms, [&](const std::string& f) { return missing.is_missing(std::optional<std::string>(f)); });
  return forms;
}

std::vector<std::string> degree_surfaces(const AliasEntry& e, const AliasDictionary& d) {
  std::vector<std::string> out = e.aliases;
  // dotted spellings of the acronyms, as typed into many repositories
  for (const auto& a : e.aliases) {
    if (a.find(' ') != std::string::npos || a.size() < 2) continue;
    std::string dotted;
    if (a == "PHD") dotted = "Ph.D.";
    else if (a == "EDD") dotted = "Ed.D.";
    else if (a == "MS" || a == "MA" || a == "MM") dotted = std::string(1, a[0]) + "." + a[1] + ".";
    if (!dotted.empty() && d.lookup(dotted).kind == MatchKind::Alias) out.push_back(dotted);
  }
  return out;
}

std::vector<std::string> department_surfaces(const AliasEntry& e, const Resources& r) {
  std::vector<std::string> forms = {"Department of " + e.canonical, "Dept. of " + e.canonical,
                                    e.canonical + " Department",    "School of " + e.canonical,
                                    "Graduate Program in " + e.canonical, "College of " + e.canonical};
  for (const auto& a : e.aliases) {
    forms.push_back(a);
    forms.push_back("Dept of " + a);
    forms.push_back(e.canonical + " (" + a + ")");
  }
  std::vector<std::string> ok;
  for (const auto& f : forms) {
    const auto d = detect_department(f, r);
    if (r.missing.is_missing(std::optional<std::string>(f))) continue;
    if (d.size() != 1 || d[0].kind != ErrorKind::NonCanonical) continue;
    const auto fix = canonicalize_department(f, r);
    if (fix.canonical == e.canonical && fix.actions.size() == 1) ok.push_back(f);
  }
  return ok;
}

// Indices 0..n-1 in a seeded order, consumed front to back.
class Picker {
 public:
  Picker(std::size_t n, Rng& rng) : order_(n) {
    for (std::size_t i = 0; i < n; ++i) order_[i] = i;
    rng.shuffle(order_);
  }
  std::vector<std::size_t> take(std::size_t k) {
    require(next_ + k <= order_.size(), "not enough records for the requested corruptions");
    std::vector<std::size_t> out(order_.begin() + static_cast<std::ptrdiff_t>(next_),
                                 order_.begin() + static_cast<std::ptrdiff_t>(next_ + k));
    next_ += k;
    return out;
  }

 private:
  std::vector<std::size_t> order_;
  std::size_t next_ = 0;
};

}  // namespace

Benchmark build_benchmark(const BenchmarkSpec& spec, const Resources& r) {
  Benchmark b;
  b.spec = spec;
  Rng rng(spec.seed);
  const RuleNameJudge judge;

  // pools
  std::vector<const AliasEntry*> universities;
  for (const auto& e : r.universities.entries()) {
    if (!without_sentinels(e.aliases, r.missing).empty()) universities.push_back(&e);
  }
  require(universities.size() >= spec.universities_used, "too few universities with aliases");
  rng.shuffle(universities);
  universities.resize(spec.universities_used);

  std::vector<std::pair<const AliasEntry*, std::vector<std::string>>> departments;
  for (const auto& e : r.departments.entries()) {
    if (!detect_department(e.canonical, r).empty()) continue;
    auto forms = department_surfaces(e, r);
    if (forms.size() >= 3) departments.emplace_back(&e, std::move(forms));
  }
  require(departments.size() >= 40, "too few departments with verified variants");
  const auto* music = r.departments.find_entry("Music");
  require(music && music->canonical == "Music", "department list lacks Music");

  auto clean_name = [&](bool middle) {
    while (true) {
      auto n = person_name(rng, middle);
      if (judge.judge(n).all_person()) return n;
    }
  };

  // clean records
  for (std::size_t i = 0; i < spec.records; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "etd-%04zu", i + 1);
    EtdRecord rec(id);
    rec.set_raw(FieldKey::Title, dissertation_title(rng));
    rec.set_raw(FieldKey::Author, clean_name(rng.index(3) == 0));
    rec.set_raw(FieldKey::Advisor, clean_name(rng.index(4) == 0));
    // every sampled university appears at least once
    rec.set_raw(FieldKey::University,
                (i < universities.size() ? universities[i] : rng.pick(universities))->canonical);
    rec.set_raw(FieldKey::Year, std::to_string(2010 + rng.index(10)));
    rec.set_raw(FieldKey::Degree, pick_degree(rng));
    rec.set_raw(FieldKey::Department, rng.pick(departments).first->canonical);
    b.clean.push_back(std::move(rec));
  }

  const auto n = spec.records;
  b.records = b.clean;
  std::vector<ExtractedFields> oracle(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto f : kAllFields) oracle[i][index_of(f)] = b.clean[i].raw(f);
  }
  std::vector<std::array<std::optional<ErrorKind>, kFieldCount>> kinds(n);
  std::vector<std::size_t> unextractable;

  auto mark = [&](std::size_t i, FieldKey f, ErrorKind k, std::optional<std::string> value) {
    b.records[i].set_raw(f, std::move(value));
    kinds[i][index_of(f)] = k;
  };
  auto drop = [&](Picker& p, FieldKey f, std::size_t count) {
    auto idx = p.take(count);
    for (auto i : idx) mark(i, f, ErrorKind::Missing, std::nullopt);
    return idx;
  };

  {  // title
    Picker p(n, rng);
    drop(p, FieldKey::Title, spec.missing[index_of(FieldKey::Title)]);
    for (auto i : p.take(spec.title_incorrect)) mark(i, FieldKey::Title, ErrorKind::IncorrectValue, junk_title(rng));
  }
  {  // author
    Picker p(n, rng);
    const auto missing = drop(p, FieldKey::Author, spec.missing[index_of(FieldKey::Author)]);
    require(missing.size() >= spec.authors_not_extractable, "more unextractable authors than missing ones");
    unextractable.assign(missing.begin(), missing.begin() + static_cast<std::ptrdiff_t>(spec.authors_not_extractable));
  }
  {  // advisor
    Picker p(n, rng);
    drop(p, FieldKey::Advisor, spec.missing[index_of(FieldKey::Advisor)]);
    const auto roles = p.take(spec.advisor_roles);
    for (std::size_t k = 0; k < roles.size(); ++k) {
      const auto i = roles[k];
      // the two contributor strings quoted by the reference study come first
      if (k == 0) b.clean[i].set_raw(FieldKey::Advisor, "Mark Pankow");
      if (k == 1) b.clean[i].set_raw(FieldKey::Advisor, "Andrew Mathew Jr.");
      oracle[i][index_of(FieldKey::Advisor)] = b.clean[i].raw(FieldKey::Advisor);
      const std::string role = k == 0 ? "Co-Chair" : k == 1 ? "Committee Member" : rng.pick(kRoles);
      const auto value = *b.clean[i].raw(FieldKey::Advisor) + ", " + role;
      const auto d = detect_advisor(value, judge);
      require(d && d->kind == ErrorKind::NonCanonical, "role string not detected: " + value);
      mark(i, FieldKey::Advisor, ErrorKind::NonCanonical, value);
    }
  }
  {  // university
    Picker p(n, rng);
    drop(p, FieldKey::University, spec.missing[index_of(FieldKey::University)]);
    for (auto i : p.take(spec.university_aliases)) {
      const auto* e = r.universities.find_entry(*b.clean[i].raw(FieldKey::University));
      mark(i, FieldKey::University, ErrorKind::NonCanonical, rng.pick(without_sentinels(e->aliases, r.missing)));
    }
  }
  {  // year
    Picker p(n, rng);
    drop(p, FieldKey::Year, spec.missing[index_of(FieldKey::Year)]);
    for (auto i : p.take(spec.year_non_iso)) {
      const int year = std::stoi(*b.clean[i].raw(FieldKey::Year));
      const int month = 1 + static_cast<int>(rng.index(12));
      const int day = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(days_in_month(year, month))));
      const DateParts parts{year, month, day};
      b.clean[i].set_raw(FieldKey::Year, render_iso(parts));
      oracle[i][index_of(FieldKey::Year)] = render_iso(parts);
      char buf[48];
      std::snprintf(buf, sizeof buf, "%02d-%02d-%04d", month, day, year);
      mark(i, FieldKey::Year, ErrorKind::NonCanonical, std::string(buf));
    }
  }
  {  // degree
    Picker p(n, rng);
    auto alias_for = [&](std::size_t i) {
      const auto* e = r.degrees.find_entry(*b.clean[i].raw(FieldKey::Degree));
      require(e && !e->aliases.empty(), "degree without aliases");
      return rng.pick(without_sentinels(degree_surfaces(*e, r.degrees), r.missing));
    };
    const auto missing = drop(p, FieldKey::Degree, spec.missing[index_of(FieldKey::Degree)]);
    require(missing.size() >= spec.degree_oracle_aliases, "too few missing degrees for oracle acronyms");
    for (std::size_t k = 0; k < spec.degree_oracle_aliases; ++k) {
      oracle[missing[k]][index_of(FieldKey::Degree)] = alias_for(missing[k]);
    }
    const auto wrong = p.take(spec.degree_incorrect);
    for (std::size_t k = 0; k < wrong.size(); ++k) {
      const auto& v = kWrongDegree[k % kWrongDegree.size()];
      require(r.degrees.lookup(v).kind == MatchKind::NotFound, "wrong degree value is in the dictionary: " + v);
      mark(wrong[k], FieldKey::Degree, ErrorKind::IncorrectValue, v);
      oracle[wrong[k]][index_of(FieldKey::Degree)] = alias_for(wrong[k]);
    }
    for (auto i : p.take(spec.degree_aliases)) mark(i, FieldKey::Degree, ErrorKind::NonCanonical, alias_for(i));
  }
  {  // department
    Picker p(n, rng);
    auto variant_for = [&](std::size_t i) {
      const auto& canonical = *b.clean[i].raw(FieldKey::Department);
      const auto it = std::find_if(departments.begin(), departments.end(),
                                   [&](const auto& d) { return d.first->canonical == canonical; });
      require(it != departments.end(), "department outside the pool");
      return rng.pick(it->second);
    };
    const auto missing = drop(p, FieldKey::Department, spec.missing[index_of(FieldKey::Department)]);
    require(missing.size() >= spec.department_oracle_variants, "too few missing departments for oracle variants");
    for (std::size_t k = 0; k < spec.department_oracle_variants; ++k) {
      oracle[missing[k]][index_of(FieldKey::Department)] = variant_for(missing[k]);
    }
    const Words misspelled = {"scool of Music", "College of Muisc"};
    const auto spelled = p.take(spec.department_misspelled);
    for (std::size_t k = 0; k < spelled.size(); ++k) {
      const auto i = spelled[k];
      b.clean[i].set_raw(FieldKey::Department, "Music");
      oracle[i][index_of(FieldKey::Department)] = "Music";
      mark(i, FieldKey::Department, ErrorKind::Misspelling, misspelled[k % misspelled.size()]);
    }
    for (auto i : p.take(spec.department_variants)) mark(i, FieldKey::Department, ErrorKind::NonCanonical, variant_for(i));
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (const auto f : kAllFields) {
      b.gold.push_back({b.clean[i].id(), f, *b.clean[i].raw(f), kinds[i][index_of(f)]});
    }
    b.oracle.push_back({b.clean[i].id(), oracle[i]});
  }
  b.oracle_partial = b.oracle;
  for (auto i : unextractable) b.oracle_partial[i].fields[index_of(FieldKey::Author)] = std::nullopt;
  return b;
}

std::string Benchmark::manifest_json() const {
  nlohmann::ordered_json j;
  j["seed"] = spec.seed;
  j["records"] = spec.records;
  nlohmann::ordered_json fields = nlohmann::ordered_json::object();
  const auto canonical = spec.expected_canonical();
  for (const auto f : kAllFields) {
    std::array<std::size_t, 5> counts{};
    for (const auto& g : gold) {
      if (g.field == f && g.error_kind) ++counts[static_cast<std::size_t>(*g.error_kind)];
    }
    nlohmann::ordered_json row;
    row["missing"] = counts[static_cast<std::size_t>(ErrorKind::Missing)];
    row["incorrect"] = counts[static_cast<std::size_t>(ErrorKind::IncorrectValue)];
    row["misspelled"] = counts[static_cast<std::size_t>(ErrorKind::Misspelling)];
    row["non_canonical"] = counts[static_cast<std::size_t>(ErrorKind::NonCanonical)];
    row["expected_canonicalizations"] = canonical[index_of(f)];
    fields[std::string(field_column(f))] = std::move(row);
  }
  j["fields"] = std::move(fields);
  nlohmann::ordered_json missing_authors = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    if (oracle[i].fields[index_of(FieldKey::Author)] && !oracle_partial[i].fields[index_of(FieldKey::Author)]) {
      missing_authors.push_back(oracle[i].id);
    }
  }
  j["authors_not_extractable"] = std::move(missing_authors);
  return j.dump(2) + "\n";
}

std::string format_oracle(const std::vector<OracleRow>& rows) {
  std::string out;
  for (const auto& row : rows) {
    nlohmann::ordered_json fields = nlohmann::ordered_json::object();
    for (const auto f : kAllFields) {
      if (row.fields[index_of(f)]) fields[std::string(field_column(f))] = *row.fields[index_of(f)];
    }
    nlohmann::ordered_json j;
    j["id"] = row.id;
    j["fields"] = std::move(fields);
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

MapOracle to_oracle(const std::vector<OracleRow>& rows) {
  MapOracle o;
  for (const auto& row : rows) {
    for (const auto f : kAllFields) {
      if (row.fields[index_of(f)]) o.set(row.id, f, *row.fields[index_of(f)]);
    }
  }
  return o;
}

}  // namespace etdq::synth
