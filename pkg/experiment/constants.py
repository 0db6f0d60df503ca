# Concentration experiments
LEVELS = [11, 19, 23]
MAX_DISC = 20000
WORKERS = 4
RESULTS_PATH = "results/data/"
SWEEP_CSV_FORMAT = "concentration_p%n.csv"
SWEEP_JSON_FORMAT = "concentration_p%n.json"
SUMMARY_CSV = "concentration_summary.csv"
SUMMARY_COLUMNS = ["p", "max_disc", "rows", "spearman", "d_star", "all_negative"]
