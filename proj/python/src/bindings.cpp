#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ambio/augment.hpp"
#include "ambio/conditioner.hpp"
#include "ambio/error.hpp"
#include "ambio/foa.hpp"
#include "ambio/language.hpp"
#include "ambio/metrics.hpp"
#include "ambio/preprocess.hpp"
#include "ambio/record.hpp"
#include "ambio/sampling.hpp"
#include "ambio/trajectory.hpp"
#include "ambio/wav.hpp"

namespace py = pybind11;
using namespace ambio;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

MonoSignal to_mono(const Array& a, int rate) {
    if (a.ndim() != 1) throw Error("expected a 1-D sample array");
    return {std::vector<double>(a.data(), a.data() + a.size()), rate};
}

FoaSignal to_foa(const Array& a, int rate) {
    if (a.ndim() != 2 || a.shape(0) != 4) throw Error("expected an FOA array of shape (4, n)");
    const auto n = static_cast<std::size_t>(a.shape(1));
    std::vector<double> ch[4];
    for (std::size_t c = 0; c < 4; ++c) ch[c].assign(a.data() + c * n, a.data() + (c + 1) * n);
    return {std::move(ch[0]), std::move(ch[1]), std::move(ch[2]), std::move(ch[3]), rate};
}

py::array_t<double> from_foa(const FoaSignal& s) {
    py::array_t<double> out({py::ssize_t{4}, static_cast<py::ssize_t>(s.size())});
    double* p = out.mutable_data();
    for (std::size_t c = 0; c < 4; ++c) {
        const auto ch = s.channel(c);
        std::copy(ch.begin(), ch.end(), p + c * s.size());
    }
    return out;
}

py::array_t<double> from_vector(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::dict track_dict(const DoaTrack& t) {
    const std::size_t n = t.frames.size();
    std::vector<double> time(n), energy(n), az(n), el(n);
    py::array_t<bool> valid(static_cast<py::ssize_t>(n));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& f = t.frames[i];
        time[i] = f.time_s;
        energy[i] = f.energy;
        valid.mutable_data()[i] = f.valid();
        az[i] = f.valid() ? f.direction->azimuth_deg() : nan;
        el[i] = f.valid() ? f.direction->elevation_deg() : nan;
    }
    py::dict d;
    d["time_s"] = from_vector(time);
    d["energy"] = from_vector(energy);
    d["valid"] = valid;
    d["azimuth_deg"] = from_vector(az);
    d["elevation_deg"] = from_vector(el);
    d["frame_len"] = t.frame_len;
    d["hop"] = t.hop;
    d["sample_rate"] = t.sample_rate;
    return d;
}

py::dict report_dict(const SpatialErrorReport& r) {
    py::dict d;
    d["l1_azimuth_deg"] = r.l1_azimuth_deg;
    d["l1_elevation_deg"] = r.l1_elevation_deg;
    d["mean_spatial_angle_deg"] = r.mean_spatial_angle_deg;
    d["valid_frame_fraction"] = r.valid_frame_fraction;
    d["frames_compared"] = r.frames_compared;
    return d;
}

py::object json_to_py(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "First-order ambisonics encoding, spatial captions, conditioning and metrics";
    py::register_exception<Error>(m, "AmbioError", PyExc_ValueError);

    py::class_<Trajectory>(m, "Trajectory")
        .def(py::init([](double az0, double el0, double az1, double el1, bool clockwise, double move_start_s,
                         double move_end_s, double clip_duration_s) {
                 return Trajectory({az0, el0}, {az1, el1}, clockwise, move_start_s, move_end_s, clip_duration_s);
             }),
             py::arg("azimuth_start_deg"), py::arg("elevation_start_deg"), py::arg("azimuth_end_deg"),
             py::arg("elevation_end_deg"), py::arg("clockwise") = false, py::arg("move_start_s") = 0.0,
             py::arg("move_end_s") = 10.0, py::arg("clip_duration_s") = 10.0)
        .def_static("stationary",
                    [](double az, double el, double clip) { return Trajectory::stationary({az, el}, clip); },
                    py::arg("azimuth_deg"), py::arg("elevation_deg"), py::arg("clip_duration_s") = 10.0)
        .def_property_readonly("start", [](const Trajectory& t) {
            return py::make_tuple(t.start().azimuth_deg(), t.start().elevation_deg());
        })
        .def_property_readonly("end", [](const Trajectory& t) {
            return py::make_tuple(t.end().azimuth_deg(), t.end().elevation_deg());
        })
        .def_property_readonly("clockwise", &Trajectory::clockwise)
        .def_property_readonly("move_start_s", &Trajectory::move_start_s)
        .def_property_readonly("move_end_s", &Trajectory::move_end_s)
        .def_property_readonly("clip_duration_s", &Trajectory::clip_duration_s)
        .def_property_readonly("azimuth_delta_deg", &Trajectory::azimuth_delta_deg)
        .def_property_readonly("is_static", &Trajectory::is_static)
        .def("position_at", [](const Trajectory& t, double s) {
            const auto p = t.position_at(s);
            return py::make_tuple(p.azimuth_deg(), p.elevation_deg());
        })
        .def("__repr__", [](const Trajectory& t) {
            return "Trajectory((" + std::to_string(t.start().azimuth_deg()) + ", " +
                   std::to_string(t.start().elevation_deg()) + ") -> (" + std::to_string(t.end().azimuth_deg()) +
                   ", " + std::to_string(t.end().elevation_deg()) + "))";
        });

    m.def("signed_azimuth_delta", &signed_azimuth_delta, py::arg("start_deg"), py::arg("end_deg"),
          py::arg("clockwise"));

    m.def(
        "encode_static",
        [](const Array& mono, int rate, double az, double el) { return from_foa(encode_static(to_mono(mono, rate), {az, el})); },
        py::arg("mono"), py::arg("sample_rate"), py::arg("azimuth_deg"), py::arg("elevation_deg"),
        "Encode a mono signal at a fixed direction; returns a (4, n) W, X, Y, Z array.");
    m.def(
        "encode_moving",
        [](const Array& mono, int rate, const Trajectory& t) { return from_foa(encode_moving(to_mono(mono, rate), t)); },
        py::arg("mono"), py::arg("sample_rate"), py::arg("trajectory"));
    m.def(
        "preprocess",
        [](const Array& mono, int rate) {
            const MonoSignal out = preprocess(to_mono(mono, rate));
            return py::make_tuple(from_vector({out.samples().begin(), out.samples().end()}), out.sample_rate());
        },
        py::arg("mono"), py::arg("sample_rate"),
        "Resample to 16 kHz, trim silence and loop or cut to 10 s.");

    m.def(
        "map_to_language",
        [](const Trajectory& t) { return json_to_py(to_json(map_to_language(t))); }, py::arg("trajectory"));
    m.def(
        "spatial_caption",
        [](const std::string& caption, const Trajectory& t) {
            return compose_caption(caption, map_to_language(t),
                                   t.is_static() ? SampleKind::static_source : SampleKind::dynamic_source);
        },
        py::arg("caption"), py::arg("trajectory"));

    m.def(
        "sample_static",
        [](std::uint64_t seed) {
            Rng rng(seed);
            const auto p = sample_static_params(rng);
            return Trajectory::stationary(p, kClipDurationS);
        },
        py::arg("seed"));
    m.def(
        "sample_dynamic",
        [](std::uint64_t seed) {
            Rng rng(seed);
            const auto p = sample_dynamic_params(rng);
            return py::make_tuple(p.trajectory, std::string(to_string(p.speed)), std::string(to_string(p.movement)));
        },
        py::arg("seed"), "Returns (trajectory, speed_class, movement_kind).");

    m.def(
        "conditioning_tensor",
        [](const Trajectory& t, std::size_t az_bins, std::size_t el_bins, std::size_t frames) {
            const auto ct = build_conditioning_tensor(t, az_bins, el_bins, frames);
            py::array_t<std::uint8_t> out({static_cast<py::ssize_t>(ct.matrix.rows()),
                                           static_cast<py::ssize_t>(ct.matrix.frames())});
            std::copy(ct.matrix.values().begin(), ct.matrix.values().end(), out.mutable_data());
            return out;
        },
        py::arg("trajectory"), py::arg("az_bins") = kDefaultAzimuthBins, py::arg("el_bins") = kDefaultElevationBins,
        py::arg("frames") = kDefaultFrames, "One-hot (az_bins + el_bins, frames) matrix, azimuth rows first.");
    m.def(
        "temporal_conditions",
        [](const Trajectory& t) {
            const auto c = temporal_conditions(t);
            return py::make_tuple(c.move_start_s, c.total_move_s);
        },
        py::arg("trajectory"));

    m.def(
        "estimate_doa",
        [](const Array& foa, int rate, std::size_t frame_len, std::size_t hop, double gate_ratio) {
            return track_dict(estimate_doa(to_foa(foa, rate), {frame_len, hop, gate_ratio}));
        },
        py::arg("foa"), py::arg("sample_rate"), py::arg("frame_len") = 512, py::arg("hop") = 256,
        py::arg("gate_ratio") = 1e-6);
    m.def(
        "evaluate_pair",
        [](const Array& ref, const Array& cand, int rate) {
            return report_dict(evaluate_pair(to_foa(ref, rate), to_foa(cand, rate)));
        },
        py::arg("reference"), py::arg("candidate"), py::arg("sample_rate"));
    m.def(
        "spatial_angle",
        [](double az0, double el0, double az1, double el1) { return spatial_angle({az0, el0}, {az1, el1}); },
        py::arg("azimuth_a_deg"), py::arg("elevation_a_deg"), py::arg("azimuth_b_deg"), py::arg("elevation_b_deg"));
    m.def(
        "circular_l1", [](const std::vector<double>& a, const std::vector<double>& b) { return circular_l1(a, b); },
        py::arg("a_deg"), py::arg("b_deg"));
    m.def(
        "mrstft_distance",
        [](const Array& ref, const Array& cand, int rate) {
            const auto r = mrstft_distance(to_foa(ref, rate), to_foa(cand, rate));
            py::list channels;
            for (const auto& c : r.channels) {
                py::dict d;
                d["spectral_convergence"] = c.spectral_convergence;
                d["log_magnitude"] = c.log_magnitude;
                channels.append(d);
            }
            py::dict d;
            d["channels"] = channels;
            d["mean"] = r.mean;
            return d;
        },
        py::arg("reference"), py::arg("candidate"), py::arg("sample_rate"));

    m.def(
        "read_foa",
        [](const std::string& path, const std::string& order) {
            const FoaSignal s = read_foa(path, parse_channel_order(order));
            return py::make_tuple(from_foa(s), s.sample_rate());
        },
        py::arg("path"), py::arg("channel_order") = "wxyz");
    m.def(
        "write_foa", [](const std::string& path, const Array& foa, int rate) { write_foa(to_foa(foa, rate), path); },
        py::arg("path"), py::arg("foa"), py::arg("sample_rate"));

    m.def(
        "augment_corpus",
        [](const std::string& manifest, const std::string& out_dir, std::uint64_t seed, unsigned jobs) {
            AugmentOptions opts;
            opts.seed = seed;
            opts.jobs = jobs;
            AugmentReport report;
            {
                py::gil_scoped_release release;
                report = augment_corpus(manifest, out_dir, opts);
            }
            py::list records, failures;
            for (const auto& r : report.records) records.append(json_to_py(to_json(r)));
            for (const auto& f : report.failures) {
                py::dict d;
                d["source_id"] = f.source_id;
                d["message"] = f.message;
                failures.append(d);
            }
            return py::make_tuple(records, failures);
        },
        py::arg("manifest"), py::arg("out_dir"), py::arg("seed") = 0, py::arg("jobs") = 0,
        "Returns (records, failures) and writes the corpus to out_dir.");
}
