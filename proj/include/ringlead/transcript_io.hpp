#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ringlead/core.hpp"

namespace ringlead
{
    // JSON-lines transcript format: one event per line with fields
    // seq, kind, proc, ordinal, value. Terminal outputs are appended as
    // "output" lines so a transcript round-trips completely.
    inline void write_transcript_jsonl(std::ostream &os, const Transcript &t)
    {
        for (const auto &e : t.events)
        {
            nlohmann::json j;
            j["seq"] = e.seq;
            j["kind"] = (e.kind == EventKind::Send) ? "send" : "recv";
            j["proc"] = e.proc;
            j["ordinal"] = e.ordinal;
            j["value"] = e.value;
            os << j.dump() << '\n';
        }
        for (ProcessorId p = 0; p < t.n; ++p)
        {
            const auto &o = t.outputs[p];
            nlohmann::json j;
            j["kind"] = "output";
            j["proc"] = p;
            if (!o.terminated)
            {
                j["state"] = "running";
            }
            else if (o.aborted)
            {
                j["state"] = "bot";
            }
            else
            {
                j["state"] = "value";
                j["value"] = o.value;
            }
            os << j.dump() << '\n';
        }
    }

    inline std::string transcript_to_jsonl(const Transcript &t)
    {
        std::ostringstream ss;
        write_transcript_jsonl(ss, t);
        return ss.str();
    }

    inline Transcript read_transcript_jsonl(std::istream &is)
    {
        Transcript t;
        int max_proc = -1;
        std::string line;
        std::vector<std::pair<ProcessorId, TerminalOutput>> outs;
        while (std::getline(is, line))
        {
            if (line.empty())
            {
                continue;
            }
            nlohmann::json j = nlohmann::json::parse(line);
            const std::string kind = j.at("kind").get<std::string>();
            if (kind == "output")
            {
                TerminalOutput o;
                const std::string state = j.at("state").get<std::string>();
                if (state == "running")
                {
                    o.terminated = false;
                }
                else if (state == "bot")
                {
                    o.terminated = true;
                    o.aborted = true;
                }
                else
                {
                    o.terminated = true;
                    o.value = j.at("value").get<Value>();
                }
                outs.emplace_back(j.at("proc").get<ProcessorId>(), o);
            }
            else
            {
                Event e;
                e.seq = j.at("seq").get<std::uint64_t>();
                e.kind = (kind == "send") ? EventKind::Send : EventKind::Recv;
                e.proc = j.at("proc").get<ProcessorId>();
                e.ordinal = j.at("ordinal").get<int>();
                e.value = j.at("value").get<Value>();
                t.events.push_back(e);
            }
            max_proc = std::max(max_proc, static_cast<int>(j.at("proc").get<ProcessorId>()));
        }
        t.n = max_proc + 1;
        t.outputs.assign(static_cast<std::size_t>(t.n), TerminalOutput{});
        for (const auto &[p, o] : outs)
        {
            if (p >= 0 && p < t.n)
            {
                t.outputs[p] = o;
            }
        }
        return t;
    }

    inline Transcript transcript_from_jsonl(const std::string &s)
    {
        std::istringstream ss(s);
        return read_transcript_jsonl(ss);
    }
}
