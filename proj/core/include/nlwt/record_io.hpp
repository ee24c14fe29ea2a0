#ifndef NLWT_RECORD_IO_HPP
#define NLWT_RECORD_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "nlwt/signal.hpp"

namespace nlwt {

/// A multi-channel record: named leads of equal length at one sample rate.
///
/// CSV layout:
///   # schema_version=1        (comments may appear anywhere)
///   # fs=360                  (required unless an override is given)
///   MLII,V5                   (header; a leading "time" column is skipped)
///   0.1,0.2
///   ...
struct RecordFile {
    std::vector<std::string> channel_names;
    std::vector<std::vector<double>> channels;
    double sample_rate_hz = 0.0;
    std::string source_path;

    std::size_t channel_count() const { return channels.size(); }
    std::size_t length() const { return channels.empty() ? 0 : channels.front().size(); }
    Signal channel(std::size_t index) const;
};

/// fs_override_hz > 0 replaces a missing "# fs=" comment.
RecordFile read_csv(const std::string& path, double fs_override_hz = 0.0);
RecordFile read_csv(std::istream& in, const std::string& path_for_messages,
                    double fs_override_hz = 0.0);

/// Values are written with 12 significant digits.
void write_csv(const RecordFile& record, const std::string& path);
void write_csv(const RecordFile& record, std::ostream& out);

RecordFile record_from_signal(const Signal& signal, const std::string& channel_name);

} // namespace nlwt

#endif
