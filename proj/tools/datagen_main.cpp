#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "kcnas/datagen.hpp"

// Writes the bundled example datasets (and their schemas) into a directory.
int main(int argc, char** argv) {
    CLI::App app{"generate the example tabular datasets and their schema files"};
    std::string out_dir = "data";
    int titanic_rows = 1309;
    int churn_rows = 10000;
    std::uint64_t seed = 7;
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--titanic-rows", titanic_rows, "rows in the passenger dataset");
    app.add_option("--churn-rows", churn_rows, "rows in the churn dataset");
    app.add_option("--seed", seed, "generator seed");
    CLI11_PARSE(app, argc, argv);

    try {
        const std::filesystem::path dir(out_dir);
        kcnas::write_titanic_like_csv(dir / "titanic.csv", titanic_rows, seed);
        kcnas::write_churn_like_csv(dir / "churn.csv", churn_rows, seed + 1);
        kcnas::write_schema_json(dir / "titanic_schema.json", kcnas::titanic_schema());
        kcnas::write_schema_json(dir / "churn_schema.json", kcnas::churn_schema());
        std::cout << "wrote titanic.csv (" << titanic_rows << " rows), churn.csv (" << churn_rows
                  << " rows) and schemas to " << dir.string() << '\n';
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return 0;
}
