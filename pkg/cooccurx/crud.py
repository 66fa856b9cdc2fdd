"""Report storage

Utilities for persisting bench reports and co-occurrence tables to a SQL database.
"""

import pandas as pd
from sqlalchemy.engine import create_engine
from sqlalchemy.sql import text as sa_text

from .errors import CooccurrenceError

DEFAULT_URL = 'sqlite:///cooccurx_bench.db'


class ReportStoreError(CooccurrenceError):
    pass


class ReportStore:
    """
    Class that serves as client to a SQL database holding report tables

    Attributes:
    url (str): SQLAlchemy database URL.

    Methods:
    dataframe_to_table(df, table_name, method): writes a Pandas dataframe to a SQL table
    get_table_dataframe(table_name): returns a Pandas dataframe from a SQL table
    get_query_dataframe(query): Returns a dataframe from a SQL query result set.
    truncate_table(table_name): Deletes all rows of a SQL table.
    disconnect(): Disposes of the sql alchemy engine connection
    """

    def __init__(self, url: str = DEFAULT_URL) -> None:
        """
        Initalizes a ReportStore object.

        :param url: SQLAlchemy URL, e.g. sqlite:///bench.db
        """
        self.url = url
        self.engine = create_engine(url)

    @staticmethod
    def _check_name(table_name: str) -> str:
        if not table_name.replace('_', '').isalnum():
            raise ReportStoreError(f'Table name {table_name!r} is not supported.')
        return table_name

    def dataframe_to_table(self, df: pd.DataFrame, table_name: str, method: str = 'append') -> None:
        """
        Writes dataframe rows to a SQL table.

        :param df: Dataframe to be loaded into SQL table.
        :param table_name: SQL table name.
        :param method: How the data is loaded; reload, append or create
        :return:
        """
        table_name = self._check_name(table_name)
        method = method.upper()

        if method == 'RELOAD':
            update_type = 'append'
            self.truncate_table(table_name=table_name)
        elif method == 'CREATE':
            update_type = 'replace'
        elif method == 'APPEND':
            update_type = 'append'
        else:
            raise ReportStoreError(f'Unknown load method {method!r}.')

        df.to_sql(table_name, con=self.engine, if_exists=update_type, index=False)

    def get_table_dataframe(self, table_name: str) -> pd.DataFrame:
        """
        Returns a dataframe from a SQL table.

        :param table_name:
        :return:
        """
        table_name = self._check_name(table_name)
        with self.engine.begin() as conn:
            return pd.read_sql_query(con=conn, sql=sa_text(f'SELECT * FROM {table_name}'))

    def get_query_dataframe(self, query: str) -> pd.DataFrame:
        """
        Returns a dataframe from a SQL query result set.

        :param query: SQL query that returns dataset.
        :return: Pandas DataFrame
        """
        with self.engine.begin() as conn:
            return pd.read_sql_query(con=conn, sql=sa_text(query))

    def truncate_table(self, table_name: str) -> None:
        """
        Deletes every row of a SQL table, if it exists.

        :param table_name: Database table name.
        :return: None
        """
        table_name = self._check_name(table_name)
        with self.engine.begin() as conn:
            if self.engine.dialect.has_table(conn, table_name):
                conn.execute(sa_text(f'DELETE FROM {table_name}'))

    def disconnect(self) -> None:
        """Method to close the open database connection."""
        self.engine.dispose()
