#ifndef MULTINORM_IO_HPP
#define MULTINORM_IO_HPP

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "multinorm/compose.hpp"
#include "multinorm/cone.hpp"
#include "multinorm/decomposition.hpp"
#include "multinorm/lab.hpp"
#include "multinorm/matrix.hpp"
#include "multinorm/partitions.hpp"

namespace multinorm {

using json = nlohmann::ordered_json;

json to_json(ExponentMatrix const& E);
json to_json(PartialExponentMatrix const& B);
ExponentMatrix matrix_from_json(json const& j);
PartialExponentMatrix partial_matrix_from_json(json const& j);

json to_json(ConeSpec const& C);
ConeSpec cone_from_json(json const& j);

json to_json(BlockDecomposition const& dec);
BlockDecomposition decomposition_from_json(json const& j);

json to_json(MarkedPartition const& S);
MarkedPartition partition_from_json(json const& j);

json to_json(MatrixReport const& r);
json to_json(Closure const& c);
json to_json(Reduction const& r);
json to_json(ShellReport const& r);
json to_json(WeakTypeProfile const& p);
json to_json(MeasureReport const& r);
json to_json(CompositionCase const& c);
json to_json(CoverReport const& c);
json to_json(GroupCompatReport const& r);

json load_json_file(std::string const& path);
// FNV-1a of the file bytes; embedded in reports for provenance.
std::string file_hash(std::string const& path);

void write_field_csv(GridField const& f, std::string const& path);
void write_field_raster(GridField const& f, std::string const& path);

}  // namespace multinorm

#endif
