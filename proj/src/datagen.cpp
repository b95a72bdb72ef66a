#include "kcnas/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "kcnas/csv.hpp"
#include "kcnas/rng.hpp"

namespace kcnas {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::string fmt(const char* pattern, double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, pattern, value);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

const char* kGivenNames[] = {"James", "Mary", "John", "Anna", "William", "Elsa",
                             "George", "Nora", "Thomas", "Kate", "Henry", "Alice"};
const char* kSurnames[] = {"Andersen", "Bailey",   "Carter",  "Dawson",  "Ekholm",  "Farrell",
                           "Gallagher", "Hansen",  "Iverson", "Jensen",  "Kovacs",  "Larsen",
                           "Moran",     "Nilsson", "OBrien",  "Persson", "Quinn",   "Riley",
                           "Sandberg",  "Thorne",  "Ulmer",   "Vickers", "Walsh",   "Young"};
const char* kDestinations[] = {"New York NY", "Chicago IL",   "Montreal PQ", "Detroit MI",
                               "Boston MA",   "Cleveland OH", "London",      "Paris",
                               "Winnipeg MB", "Philadelphia PA"};

}  // namespace

void write_titanic_like_csv(const std::filesystem::path& path, int rows, std::uint64_t seed) {
    if (rows < 1) throw std::invalid_argument("write_titanic_like_csv: rows must be >= 1");
    auto out = open_out(path);
    Rng rng(derive_seed(seed, 0x7469ULL));

    write_csv_row(out, {"pclass", "survived", "name", "sex", "age", "sibsp", "parch", "ticket", "fare",
                        "cabin", "embarked", "boat", "body", "home.dest"});

    for (int i = 0; i < rows; ++i) {
        const int pclass = static_cast<int>(rng.weighted_index({0.246, 0.212, 0.542})) + 1;
        const bool female = rng.bernoulli(0.356);
        const double age = std::clamp(rng.normal(29.5, 14.2), 0.4, 80.0);
        const bool age_missing = rng.bernoulli(0.20);
        const int sibsp = static_cast<int>(rng.weighted_index({0.68, 0.23, 0.04, 0.03, 0.015, 0.005}));
        const int parch = static_cast<int>(rng.weighted_index({0.765, 0.13, 0.08, 0.025}));
        const double fare_mu = pclass == 1 ? 4.35 : (pclass == 2 ? 3.05 : 2.15);
        const double fare = std::exp(rng.normal(fare_mu, 0.45));
        const std::size_t embarked = rng.weighted_index({0.70, 0.21, 0.09});  // S, C, Q
        const bool has_cabin = rng.bernoulli(pclass == 1 ? 0.75 : (pclass == 2 ? 0.2 : 0.06));
        const char cabin_letter = static_cast<char>('A' + rng.uniform_int(7));

        // survival model: sex and class dominate, age/family/fare contribute
        double z = -1.82;
        z += 2.80 * (female ? 1.0 : 0.0);
        z += pclass == 1 ? 1.25 : (pclass == 2 ? 0.50 : 0.0);
        z += -0.034 * (age - 29.0);
        z += -0.40 * std::max(0, sibsp - 1);
        z += -0.12 * parch;
        z += 0.28 * (std::log1p(fare) - 3.1);
        z += embarked == 1 ? 0.22 : 0.0;
        z += rng.normal(0.0, 0.30);
        const int survived = rng.bernoulli(sigmoid(z)) ? 1 : 0;

        const std::string surname = kSurnames[rng.uniform_int(std::size(kSurnames))];
        const std::string given = kGivenNames[rng.uniform_int(std::size(kGivenNames))];
        const std::string title = female ? (rng.bernoulli(0.5) ? "Mrs" : "Miss") : "Mr";
        const std::string name = surname + ", " + title + ". " + given;

        std::vector<std::string> row(14);
        row[0] = std::to_string(pclass);
        row[1] = std::to_string(survived);
        row[2] = name;
        row[3] = female ? "female" : "male";
        row[4] = age_missing ? "" : fmt("%.1f", age);
        row[5] = std::to_string(sibsp);
        row[6] = std::to_string(parch);
        row[7] = "T" + std::to_string(100000 + i);
        row[8] = fmt("%.4f", fare);
        row[9] = has_cabin ? std::string(1, cabin_letter) + std::to_string(1 + rng.uniform_int(120)) : "";
        row[10] = embarked == 0 ? "S" : (embarked == 1 ? "C" : "Q");
        row[11] = rng.bernoulli(0.35) ? std::to_string(1 + rng.uniform_int(16)) : "";
        row[12] = rng.bernoulli(0.09) ? std::to_string(1 + rng.uniform_int(328)) : "";
        row[13] = rng.bernoulli(0.57) ? kDestinations[rng.uniform_int(std::size(kDestinations))] : "";
        write_csv_row(out, row);
    }
}

void write_churn_like_csv(const std::filesystem::path& path, int rows, std::uint64_t seed) {
    if (rows < 1) throw std::invalid_argument("write_churn_like_csv: rows must be >= 1");
    auto out = open_out(path);
    Rng rng(derive_seed(seed, 0x6368ULL));

    write_csv_row(out, {"row_number", "customer_id", "surname", "credit_score", "geography", "gender",
                        "age", "tenure", "balance", "num_products", "has_cr_card", "is_active_member",
                        "estimated_salary", "exited"});

    for (int i = 0; i < rows; ++i) {
        const int credit_score = static_cast<int>(std::clamp(rng.normal(650.0, 96.0), 350.0, 850.0));
        const std::size_t geography = rng.weighted_index({0.50, 0.25, 0.25});  // France, Germany, Spain
        const bool female = rng.bernoulli(0.455);
        const int age = static_cast<int>(std::clamp(rng.normal(38.9, 10.5), 18.0, 92.0));
        const int tenure = static_cast<int>(rng.uniform_int(11));
        const bool zero_balance = rng.bernoulli(0.36);
        const double balance = zero_balance ? 0.0 : std::clamp(rng.normal(120000.0, 50000.0), 0.0, 260000.0);
        const int num_products = static_cast<int>(rng.weighted_index({0.51, 0.46, 0.025, 0.005})) + 1;
        const bool has_card = rng.bernoulli(0.705);
        const bool is_active = rng.bernoulli(0.515);
        const double salary = rng.uniform(11.0, 200000.0);

        double z = -1.22;
        z += 0.072 * (age - 39.0);
        z += is_active ? -1.05 : 0.0;
        z += geography == 1 ? 0.74 : 0.0;
        z += female ? 0.45 : 0.0;
        z += num_products >= 3 ? 1.9 : (num_products == 2 ? -0.85 : 0.0);
        z += zero_balance ? -0.30 : 0.0;
        z += -0.0012 * (credit_score - 650);
        z += rng.normal(0.0, 0.35);
        const int exited = rng.bernoulli(sigmoid(z)) ? 1 : 0;

        std::vector<std::string> row(14);
        row[0] = std::to_string(i + 1);
        row[1] = std::to_string(15600000 + i * 7 + static_cast<int>(rng.uniform_int(7)));
        row[2] = kSurnames[rng.uniform_int(std::size(kSurnames))];
        row[3] = std::to_string(credit_score);
        row[4] = geography == 0 ? "France" : (geography == 1 ? "Germany" : "Spain");
        row[5] = female ? "Female" : "Male";
        row[6] = std::to_string(age);
        row[7] = std::to_string(tenure);
        row[8] = fmt("%.2f", balance);
        row[9] = std::to_string(num_products);
        row[10] = has_card ? "1" : "0";
        row[11] = is_active ? "1" : "0";
        row[12] = fmt("%.2f", salary);
        row[13] = std::to_string(exited);
        write_csv_row(out, row);
    }
}

std::vector<ColumnSchema> titanic_schema() {
    return {
        {"pclass", ColumnKind::numeric, {}},
        {"survived", ColumnKind::label, {}},
        {"name", ColumnKind::drop, {}},
        {"sex", ColumnKind::categorical, {"female", "male"}},
        {"age", ColumnKind::numeric, {}},
        {"sibsp", ColumnKind::numeric, {}},
        {"parch", ColumnKind::numeric, {}},
        {"ticket", ColumnKind::drop, {}},
        {"fare", ColumnKind::numeric, {}},
        {"cabin", ColumnKind::categorical, {}},
        {"embarked", ColumnKind::categorical, {"C", "Q", "S"}},
        {"boat", ColumnKind::categorical, {}},
        {"body", ColumnKind::numeric, {}},
        {"home.dest", ColumnKind::categorical, {}},
    };
}

std::vector<ColumnSchema> churn_schema() {
    return {
        {"row_number", ColumnKind::drop, {}},
        {"customer_id", ColumnKind::drop, {}},
        {"surname", ColumnKind::categorical, {}},
        {"credit_score", ColumnKind::numeric, {}},
        {"geography", ColumnKind::categorical, {"France", "Germany", "Spain"}},
        {"gender", ColumnKind::categorical, {"Female", "Male"}},
        {"age", ColumnKind::numeric, {}},
        {"tenure", ColumnKind::numeric, {}},
        {"balance", ColumnKind::numeric, {}},
        {"num_products", ColumnKind::numeric, {}},
        {"has_cr_card", ColumnKind::numeric, {}},
        {"is_active_member", ColumnKind::numeric, {}},
        {"estimated_salary", ColumnKind::numeric, {}},
        {"exited", ColumnKind::label, {}},
    };
}

void write_schema_json(const std::filesystem::path& path, const std::vector<ColumnSchema>& schema) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& column : schema) {
        nlohmann::ordered_json entry{{"name", column.name},
                                     {"kind", std::string(column_kind_name(column.kind))}};
        if (!column.categories.empty()) entry["categories"] = column.categories;
        doc.push_back(std::move(entry));
    }
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

}  // namespace kcnas
