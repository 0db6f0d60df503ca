from os import makedirs
from os.path import isfile, join

from pandas import DataFrame, read_csv, concat

from experiment.constants import *
from geohom.concentration import run_sweep, sweep_summary, write_json


def saveFile(dataframe, filename):
    if isfile(filename):
        dataframe = concat([read_csv(filename), dataframe], axis=0)
    dataframe.to_csv(filename, index=False)


def sweepFile(level, fmt):
    return fmt.replace("%n", str(level))


def runConcentration(level, maxDisc, path=RESULTS_PATH, workers=WORKERS):
    makedirs(path, exist_ok=True)
    print(f'Concentration sweep: p={level}, d <= {maxDisc}')
    records = run_sweep(level, maxDisc, join(path, sweepFile(level, SWEEP_CSV_FORMAT)), workers)
    write_json(records, join(path, sweepFile(level, SWEEP_JSON_FORMAT)))
    summary = sweep_summary(records)
    print(f'p={level}: {summary["rows"]} rows, spearman {summary["spearman"]}, d* {summary["d_star"]}')
    return {'p': level, 'max_disc': maxDisc, **summary}


def runAll(levels=LEVELS, maxDisc=MAX_DISC, path=RESULTS_PATH, workers=WORKERS):
    summaries = DataFrame([runConcentration(level, maxDisc, path, workers) for level in levels],
                          columns=SUMMARY_COLUMNS)
    saveFile(summaries, join(path, SUMMARY_CSV))
    return summaries


if __name__ == '__main__':
    runAll()
