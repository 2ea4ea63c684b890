#ifndef LOCCLAB_IO_HPP
#define LOCCLAB_IO_HPP

#include "locclab/asymptotic.hpp"
#include "locclab/ensembles.hpp"
#include "locclab/qcore.hpp"

#include <json.hpp>
#include <string>
#include <vector>

namespace locclab {
namespace io {

using json = nlohmann::json;

// Complex data travels as [re, im] pairs; matrices row-major.
json complex_to_json(const Complex& z);
json vector_to_json(const Vector& v);
json matrix_to_json(const Matrix& m);
Complex complex_from_json(const json& j);
Vector vector_from_json(const json& j);
Matrix matrix_from_json(const json& j, int rows, int cols);

// {dims, p_rho, rho, p_sigma, sigma}
json instance_to_json(const BinaryInstance& inst);
BinaryInstance instance_from_json(const json& j);

// {x, pi0: {terms: [{coeff, factors: [ket...]}]}, pis: [{factors: [matrix...]}]}
asymptotic::TheoremOneWitness witness_from_json(const json& j, const Dims& dims);

// {dims, vectors: [ket...]}
std::pair<std::vector<Ket>, Dims> kets_from_json(const json& j);

json certificate_to_json(const asymptotic::NoGoCertificate& cert);
json witness_report_to_json(const asymptotic::WitnessReport& report);

json load_json_file(const std::string& path);

} // namespace io
} // namespace locclab

#endif
