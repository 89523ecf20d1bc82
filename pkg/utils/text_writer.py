"""Text report writing utilities."""
import logging
import os

logger = logging.getLogger(__name__)


def save_report(text_content, output_path):
    """
    Save a report to a text file.
    
    Args:
        text_content: String content to write
        output_path: Output file path
        
    Returns:
        bool: True if successful, False otherwise
    """
    try:
        output_dir = os.path.dirname(output_path)
        if output_dir:
            os.makedirs(output_dir, exist_ok=True)
        
        with open(output_path, "w", encoding="utf-8") as f:
            f.write(text_content)
            if not text_content.endswith("\n"):
                f.write("\n")
        
        logger.info("report saved to %s", output_path)
        return True
    except OSError as e:
        logger.error("could not write %s: %s", output_path, e)
        return False


def generate_output_filename(input_path, suffix):
    """
    Derive a report filename from an input file.
    
    Args:
        input_path: Path to the puzzle file
        suffix: Report kind, e.g. 'solution' or 'gap'
        
    Returns:
        str: '<input base>_<suffix>.txt'
    """
    base = os.path.splitext(input_path)[0]
    return f"{base}_{suffix}.txt"
