#pragma once

#include "bpmnpc/calculus/cinni.hpp"
#include "bpmnpc/calculus/congruence.hpp"
#include "bpmnpc/calculus/name.hpp"
#include "bpmnpc/calculus/parse.hpp"
#include "bpmnpc/calculus/print.hpp"
#include "bpmnpc/calculus/term.hpp"
#include "bpmnpc/semantics/explore.hpp"
#include "bpmnpc/semantics/step.hpp"
#include "bpmnpc/bpmn/model.hpp"
#include "bpmnpc/bpmn/validate.hpp"
#include "bpmnpc/bpmn/xml.hpp"
#include "bpmnpc/convert/config.hpp"
#include "bpmnpc/convert/converter.hpp"
#include "bpmnpc/convert/patterns.hpp"
#include "bpmnpc/emit/cli.hpp"
#include "bpmnpc/emit/config_json.hpp"
#include "bpmnpc/emit/module.hpp"
#include "bpmnpc/emit/trace.hpp"
